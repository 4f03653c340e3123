use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::linalg::{self, int_dot, make_primitive, signum};
use super::ToricError;
use crate::exact::Rational;

/// Facet inequality `normal · x ≤ offset` with a primitive integer normal,
/// so `offset − normal · x` is the lattice distance to the facet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
    /// Indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
}

impl Facet {
    /// Lattice distance `ℓ(x) = offset − normal · x`.
    pub fn distance(&self, x: &[Rational]) -> Rational {
        let mut s = self.offset.clone();
        for (a, xi) in self.normal.iter().zip(x) {
            s -= Rational::from(a.clone()) * xi;
        }
        s
    }
}

/// Nonempty face, given by its vertices and the facets containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub facets: Vec<usize>,
    pub dim: usize,
}

/// Convex hull of finitely many rational points, kept as its exact vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    affine_dim: usize,
    /// Facets, only when full-dimensional.
    facets: Vec<Facet>,
}

impl RationalPolytope {
    /// Hull of `points` in `ℚ^dim`. Interior and repeated points are dropped.
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self, ToricError> {
        if points.is_empty() {
            return Err(ToricError::Empty);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(ToricError::DimensionMismatch { expected: dim, found: p.len() });
        }
        let mut pts = points;
        pts.sort();
        pts.dedup();
        Ok(hull(dim, pts))
    }

    /// Axis-parallel box `∏ [lo_i, hi_i]`.
    pub fn cuboid(bounds: &[(Rational, Rational)]) -> Result<Self, ToricError> {
        let dim = bounds.len();
        let mut pts = Vec::new();
        for mask in 0..(1usize << dim) {
            pts.push(
                (0..dim)
                    .map(|i| if mask >> i & 1 == 1 { bounds[i].1.clone() } else { bounds[i].0.clone() })
                    .collect(),
            );
        }
        Self::new(dim, pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn facets(&self) -> Result<&[Facet], ToricError> {
        if !self.is_full_dimensional() {
            return Err(ToricError::NotFullDimensional);
        }
        Ok(&self.facets)
    }

    /// Euclidean volume in the ambient dimension (zero when degenerate).
    pub fn volume(&self) -> Rational {
        if !self.is_full_dimensional() {
            return Rational::zero();
        }
        if self.dim == 0 {
            return Rational::one();
        }
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut total = Rational::zero();
        for simplex in self.triangulate_face(&all, self.dim) {
            let base = &self.vertices[simplex[0]];
            let rows: Vec<Vec<Rational>> = simplex[1..]
                .iter()
                .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            total += linalg::det(&rows).abs();
        }
        total / factorial(self.dim)
    }

    /// Pulling triangulation of the face with the given vertices and dimension.
    fn triangulate_face(&self, face: &[usize], dim: usize) -> Vec<Vec<usize>> {
        if dim == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut out = Vec::new();
        for sub in self.facets_of_face(face, dim) {
            if sub.contains(&apex) {
                continue;
            }
            for mut s in self.triangulate_face(&sub, dim - 1) {
                s.push(apex);
                out.push(s);
            }
        }
        out
    }

    /// Facets of a face: its maximal intersections with facets of the polytope.
    fn facets_of_face(&self, face: &[usize], dim: usize) -> BTreeSet<Vec<usize>> {
        let mut subs = BTreeSet::new();
        for f in &self.facets {
            let inter: Vec<usize> = face.iter().copied().filter(|v| f.vertices.contains(v)).collect();
            if inter.len() >= dim && inter.len() < face.len() && self.point_set_dim(&inter) + 1 == dim {
                subs.insert(inter);
            }
        }
        subs
    }

    fn point_set_dim(&self, idx: &[usize]) -> usize {
        let base = &self.vertices[idx[0]];
        let rows: Vec<Vec<Rational>> = idx[1..]
            .iter()
            .map(|&i| self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        if rows.is_empty() {
            0
        } else {
            linalg::rank(&rows)
        }
    }

    /// All nonempty proper faces of a full-dimensional polytope, sorted by
    /// dimension (descending) then vertex set.
    pub fn faces(&self) -> Result<Vec<Face>, ToricError> {
        let facets = self.facets()?;
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
        while let Some(face) = frontier.pop() {
            if !seen.insert(face.clone()) {
                continue;
            }
            for f in facets {
                let inter: Vec<usize> = face.iter().copied().filter(|v| f.vertices.contains(v)).collect();
                if !inter.is_empty() && inter.len() < face.len() && !seen.contains(&inter) {
                    frontier.push(inter);
                }
            }
        }
        let mut out: Vec<Face> = seen
            .into_iter()
            .map(|vs| {
                let containing = facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| vs.iter().all(|v| f.vertices.contains(v)))
                    .map(|(i, _)| i)
                    .collect();
                let dim = self.point_set_dim(&vs);
                Face { vertices: vs, facets: containing, dim }
            })
            .collect();
        out.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        Ok(out)
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self, ToricError> {
        if self.dim != other.dim {
            return Err(ToricError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Self::new(self.dim, pts)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let pts = self.vertices.iter().map(|v| v.iter().map(|x| x * r).collect()).collect();
        Self::new(self.dim, pts).expect("scaling keeps dimensions")
    }

    /// `P × {0}` in one dimension higher.
    pub fn with_zero_coordinate(&self) -> Self {
        let pts = self
            .vertices
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.push(Rational::zero());
                w
            })
            .collect();
        Self::new(self.dim + 1, pts).expect("lifting keeps dimensions")
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if self.is_full_dimensional() {
            self.facets.iter().all(|f| !f.distance(x).is_negative())
        } else {
            let mut pts = self.vertices.clone();
            pts.push(x.to_vec());
            let grown = Self::new(self.dim, pts).expect("same dimension");
            grown.vertices == self.vertices
        }
    }
}

pub(crate) fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * Rational::from_integer(BigInt::from(k)))
}

/// Double-description hull. Points are sorted and distinct.
fn hull(dim: usize, pts: Vec<Vec<Rational>>) -> RationalPolytope {
    let base = pts[0].clone();
    let diffs: Vec<Vec<Rational>> =
        pts[1..].iter().map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
    let mut echelon = diffs.clone();
    let pivots = if diffs.is_empty() { Vec::new() } else { linalg::rref(&mut echelon) };
    let k = pivots.len();
    if k == 0 {
        return RationalPolytope { dim, vertices: pts, affine_dim: 0, facets: Vec::new() };
    }
    // Coordinates on the pivot axes are an affine chart of the affine hull.
    let proj: Vec<Vec<Rational>> = pts.iter().map(|p| pivots.iter().map(|&c| p[c].clone()).collect()).collect();
    let scale = Rational::from(linalg::lcm_of_denominators(proj.iter().flatten()));
    let rows: Vec<Vec<BigInt>> = proj.iter().map(|q| homogenize(q, &scale)).collect();
    let rays = facet_rays(&rows, k);
    let incid: Vec<Vec<usize>> = rays
        .iter()
        .map(|r| (0..rows.len()).filter(|&i| int_dot(&rows[i], r).is_zero()).collect())
        .collect();
    // A point is a vertex iff no other point lies on all of its facets.
    let vertex_idx: Vec<usize> = (0..pts.len())
        .filter(|&i| {
            let on: Vec<usize> = (0..rays.len()).filter(|&f| incid[f].contains(&i)).collect();
            !(0..pts.len()).any(|j| j != i && on.iter().all(|&f| incid[f].contains(&j)))
        })
        .collect();
    let vertices: Vec<Vec<Rational>> = vertex_idx.iter().map(|&i| pts[i].clone()).collect();

    let facets = if k == dim {
        let mut fs: Vec<Facet> = rays
            .iter()
            .zip(&incid)
            .map(|(r, inc)| {
                let mut normal: Vec<BigInt> = r[1..].iter().map(|x| -x).collect();
                make_primitive(&mut normal);
                let vi = inc.iter().filter_map(|p| vertex_idx.iter().position(|v| v == p)).collect::<Vec<_>>();
                let offset = {
                    let v = &vertices[vi[0]];
                    let mut s = Rational::zero();
                    for (a, x) in normal.iter().zip(v) {
                        s += Rational::from(a.clone()) * x;
                    }
                    s
                };
                Facet { normal, offset, vertices: vi }
            })
            .collect();
        fs.sort();
        fs
    } else {
        Vec::new()
    };
    RationalPolytope { dim, vertices, affine_dim: k, facets }
}

fn homogenize(q: &[Rational], scale: &Rational) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(q.len() + 1);
    row.push(scale.to_integer());
    row.extend(q.iter().map(|x| (x * scale).to_integer()));
    row
}

/// Extreme rays of `{y : row_i · y ≥ 0}` for homogenized rows `(s, s·q_i)` of
/// full-dimensional points in `ℚ^k`. Each ray `(y0, y')` is the facet
/// inequality `−y'·x ≤ y0 / s`.
fn facet_rays(rows: &[Vec<BigInt>], k: usize) -> Vec<Vec<BigInt>> {
    let d = k + 1;

    // initial simplex
    let mut init = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut cand = basis.clone();
        cand.push(r.iter().map(|x| Rational::from(x.clone())).collect());
        if linalg::rank(&cand) == cand.len() {
            basis = cand;
            init.push(i);
            if init.len() == d {
                break;
            }
        }
    }
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut zeros: Vec<BTreeSet<usize>> = Vec::new();
    for j in 0..d {
        // column j of the inverse: A x = e_j
        let e: Vec<Rational> = (0..d).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect();
        let x = linalg::solve(&basis, &e).expect("independent rows");
        rays.push(linalg::primitive_integer(&x));
        zeros.push(init.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, r)| *r).collect());
    }

    for (ri, row) in rows.iter().enumerate() {
        if init.contains(&ri) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| int_dot(row, r)).collect();
        let sign: Vec<i8> = vals.iter().map(signum).collect();
        if sign.iter().all(|&s| s >= 0) {
            for (z, &s) in zeros.iter_mut().zip(&sign) {
                if s == 0 {
                    z.insert(ri);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| sign[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| sign[i] < 0).collect();
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common: BTreeSet<usize> = zeros[p].intersection(&zeros[n]).copied().collect();
                if common.len() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|o| o == p || o == n || !common.is_subset(&zeros[o]));
                if !adjacent {
                    continue;
                }
                let mut r: Vec<BigInt> =
                    rays[n].iter().zip(&rays[p]).map(|(a, b)| &vals[p] * a - &vals[n] * b).collect();
                make_primitive(&mut r);
                let mut z = common;
                z.insert(ri);
                new_rays.push(r);
                new_zeros.push(z);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_zeros = Vec::new();
        for i in 0..rays.len() {
            if sign[i] >= 0 {
                let mut z = zeros[i].clone();
                if sign[i] == 0 {
                    z.insert(ri);
                }
                kept_rays.push(rays[i].clone());
                kept_zeros.push(z);
            }
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
    }
    debug_assert!(rays.iter().all(|r| r[1..].iter().any(|x| !x.is_zero())));
    rays
}
