//! Presentation files and the `lie-gsb` command line.

mod parse;
mod run;

pub use parse::{
    parse_expr, parse_expr_at, parse_presentation, Directive, Expr, KukinSpec, ParseError,
    PresentationFile, PresentationKind, Sign,
};
pub use run::{run, Outcome, DEGREE_ENV};
