//! The modular curves X0(11), X0(13) and their twists: j-maps, 2-adic branches
//! over disks of the j-line, and local and small-height point searches.

mod bipoly;
mod branch;
mod disk;
mod level13;
mod x011;
mod xns;

pub use bipoly::{series_add, series_inv, series_mul, series_val_lower, spread, PadicBiPoly, QBiPoly, Series};
pub use branch::{branch_hypotheses, branch_series, eval_series, BranchReport, HypothesisCheck};
pub use disk::{cusp_branch, cusp_relation, disk_branch_series, disk_slope_analysis, DiskSlopeReport};
pub use x011::*;
pub use level13::*;
pub use xns::{xns_twist_point_search, XNS_F1, XNS_G};
