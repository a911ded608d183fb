//! The five-facility game used throughout the worked examples.
//!
//! | facility | 1    | 2 | 3   | 4 | 5   |
//! |----------|------|---|-----|---|-----|
//! | p        | 12   | 8 | 5   | 2 | 1   |
//! | a        | 9/10 | 1 | 1/4 | 1 | 3/4 |
//!
//! with `R_l = 5` and `R_f = 7/4`.

use crate::instance::{validate_instance, Instance, RawInstance};
use crate::ratio::q;

pub fn worked_raw() -> RawInstance {
    RawInstance::from_pairs(
        &[
            (q(12, 1), q(9, 10)),
            (q(8, 1), q(1, 1)),
            (q(5, 1), q(1, 4)),
            (q(2, 1), q(1, 1)),
            (q(1, 1), q(3, 4)),
        ],
        q(5, 1),
        q(7, 4),
    )
}

pub fn worked() -> Instance {
    validate_instance(&worked_raw()).expect("worked instance is valid")
}
