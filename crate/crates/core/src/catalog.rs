//! Well-known codes and graphs used as fixtures.

use crate::code::StabilizerCode;
use crate::gf2::BitMatrix;
use crate::graph::Graph;

pub const GOTTESMAN_8_3_3: &str = include_str!("../../../data/codes/gottesman_8_3_3.code");
pub const FIVE_QUBIT: &str = include_str!("../../../data/codes/five_qubit.code");
pub const STEANE_7_1_3: &str = include_str!("../../../data/codes/steane_7_1_3.code");
pub const FOUR_TWO_TWO: &str = include_str!("../../../data/codes/four_two_two.code");

/// Catalog entries by name, for lookup from the command line.
pub const NAMED: &[(&str, &str)] = &[
    ("gottesman_8_3_3", GOTTESMAN_8_3_3),
    ("five_qubit", FIVE_QUBIT),
    ("steane_7_1_3", STEANE_7_1_3),
    ("four_two_two", FOUR_TWO_TWO),
];

pub fn by_name(name: &str) -> Option<StabilizerCode> {
    NAMED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| StabilizerCode::parse(text).expect("catalog entries parse"))
}

pub fn gottesman_8_3_3() -> StabilizerCode {
    StabilizerCode::parse(GOTTESMAN_8_3_3).expect("catalog entry parses")
}

pub fn five_qubit() -> StabilizerCode {
    StabilizerCode::parse(FIVE_QUBIT).expect("catalog entry parses")
}

pub fn steane_7_1_3() -> StabilizerCode {
    StabilizerCode::parse(STEANE_7_1_3).expect("catalog entry parses")
}

pub fn four_two_two() -> StabilizerCode {
    StabilizerCode::parse(FOUR_TWO_TWO).expect("catalog entry parses")
}

/// The 3-cube in the labeling produced by standardizing the [[8,3,3]] code.
pub fn cube_adjacency() -> BitMatrix {
    BitMatrix::parse_rows(
        "00010110
         00010101
         00010011
         11100000
         00000111
         11001000
         10101000
         01101000",
    )
    .expect("valid rows")
}

pub fn cube() -> Graph {
    Graph::new(cube_adjacency()).expect("cube is a simple graph")
}
