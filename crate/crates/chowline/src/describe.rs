//! Static table tying each subcommand to the statement it exercises.

pub struct Anchor {
    pub command: &'static str,
    pub statement: &'static str,
    pub quote: &'static str,
    pub operations: &'static str,
}

pub const ANCHORS: &[Anchor] = &[
    Anchor {
        command: "toric na",
        statement: "non-Archimedean functionals of toric models as intersection numbers",
        quote: "all intersection numbers are taken",
        operations: "toric::na_j_functionals, toric::criterion_scan",
    },
    Anchor {
        command: "p1 functionals",
        statement: "E, J_χ,c and J written through Deligne pairings",
        quote: "rewrite our functionals as Deligne pairings",
        operations: "metrics::functionals_p1",
    },
    Anchor {
        command: "p1 slope",
        statement: "slopes of the functionals along an arc equal the model's E^na, J^na",
        quote: "the model of exponent m",
        operations: "metrics::slope_fit, pairs::arc_to_toric",
    },
    Anchor {
        command: "chow lognorm",
        statement: "J_χ,c as a difference of log-norms of Chow forms",
        quote: "the Chow point of (X,mL)",
        operations: "chow::lognorm_j, chow::chow_norm_difference",
    },
    Anchor {
        command: "pairs scan",
        statement: "ε-stability of the pair over sampled arcs",
        quote: "numerically stable",
        operations: "pairs::sample_arcs, pairs::scan_pair",
    },
    Anchor {
        command: "verify all",
        statement: "the full acceptance suite, twelve named checks",
        quote: "there exists a solution to",
        operations: "every module",
    },
];

pub fn lookup(command: &str) -> Option<&'static Anchor> {
    ANCHORS.iter().find(|a| a.command == command)
}

pub fn render(a: &Anchor) -> String {
    format!(
        "command:    {}\nstatement:  {}\nquote:      \"{}\"\noperations: {}\n",
        a.command, a.statement, a.quote, a.operations
    )
}

pub fn render_all() -> String {
    ANCHORS.iter().map(render).collect::<Vec<_>>().join("\n")
}
