//! Frey curves attached to `a^2 + b^3 = c^p` and their local classification at 2 and 3.

mod jdisk;
mod solutions;
mod tables;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use jdisk::{cal_d, curve_disks, jdisk_membership, jdisk_membership_rational, JDisk, CAL_E};
pub use solutions::{
    necessary_conditions, exact_root, frey_model, good_j, search_solutions, search_solutions_naive, verify_known_solutions,
    KnownCheck, SolutionKind, SolutionTriple, Violation, KNOWN_IDENTITIES,
};
pub use tables::{
    classify_2adic, classify_3adic, match_curve, table_2adic, table_3adic, Classification, CurveMatch, TableRow, Witness,
};

use crate::error::Result;

/// Combined 2-adic and 3-adic classification of a pair `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreyClassification {
    pub at2: Classification,
    pub at3: Classification,
    /// Curve-table cell when both sides land in a row.
    pub curve: Option<CurveMatch>,
}

pub fn classify(a: &BigInt, b: &BigInt) -> Result<FreyClassification> {
    let at2 = classify_2adic(a, b)?;
    let at3 = classify_3adic(a, b)?;
    let curve = match (at2.row(), at3.row()) {
        (Some(r2), Some(r3)) => Some(match_curve(r2.line, r3.line)?),
        _ => None,
    };
    Ok(FreyClassification { at2, at3, curve })
}
