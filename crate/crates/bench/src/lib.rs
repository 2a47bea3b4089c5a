//! Fixtures shared by the benchmarks.

use fintop::presentation::{parse_presentation, Presentation};

/// Presentations of the finite groups the benchmarks exercise.
pub const FINITE_GROUPS: &[(&str, &str)] = &[("Z2", "<a|a^2>"), ("Z4", "<a|a^4>"), ("S3", "<a,b|a^2,b^2,(a b)^3>")];

pub fn presentation(text: &str) -> Presentation {
    parse_presentation(text).expect("fixture presentation parses")
}
