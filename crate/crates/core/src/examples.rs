//! Built-in worked examples.

use crate::code::LinearCode;
use crate::field::FieldSpec;
use crate::matrix::ExactMatrix;

/// The `[3, 2, 2]` code with forms `x1, x2, x1 + x2`.
pub const EXAMPLE0_ROWS: [[i64; 3]; 2] = [[1, 0, 1], [0, 1, 1]];

/// The `B3` root system: `x1, x2, x3, x1 +- x2, x1 +- x3, x2 +- x3`.
pub const B3_ROWS: [[i64; 9]; 3] = [
    [1, 0, 0, 1, 1, 1, 1, 0, 0],
    [0, 1, 0, 1, -1, 0, 0, 1, 1],
    [0, 0, 1, 0, 0, 1, -1, 1, -1],
];

fn build<const N: usize>(spec: FieldSpec, rows: &[[i64; N]]) -> LinearCode {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    LinearCode::new(ExactMatrix::from_i64_rows(spec, &rows).expect("static matrix")).expect("valid code")
}

pub fn example0_over(spec: FieldSpec) -> LinearCode {
    build(spec, &EXAMPLE0_ROWS)
}

/// Panics in characteristic 2, where `x1 + x2 = x1 - x2`.
pub fn b3_over(spec: FieldSpec) -> LinearCode {
    assert_ne!(spec.characteristic(), 2, "B3 needs characteristic other than 2");
    build(spec, &B3_ROWS)
}

/// Example `e0` over `GF(2)`.
pub fn example0() -> LinearCode {
    example0_over(FieldSpec::PrimeField { modulus: 2 })
}

/// Example `b3` over `GF(5)`.
pub fn b3() -> LinearCode {
    b3_over(FieldSpec::PrimeField { modulus: 5 })
}

/// Looks up a built-in example by its CLI name.
pub fn builtin(name: &str) -> Option<LinearCode> {
    match name {
        "e0" => Some(example0()),
        "b3" => Some(b3()),
        _ => None,
    }
}

pub const BUILTIN_NAMES: [&str; 2] = ["e0", "b3"];
