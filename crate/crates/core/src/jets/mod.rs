pub mod budget;
pub mod count;
pub mod enumerate;
pub mod extend;
pub mod jet;
pub mod scheme;

pub use budget::{Budget, DEFAULT_BUDGET};
pub use count::{contact_count, contact_count_brute, count_jets, count_jets_plain, ideal_order_along_jet};
pub use enumerate::{enumerate_jets, for_each_jet};
pub use extend::{base_points, extend_jet, verify_jet, ExtensionSet};
pub use jet::Jet;
pub use scheme::{AffineScheme, FpScheme, SchemeFile};
