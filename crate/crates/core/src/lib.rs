//! Annihilator ideals of two-generated metabelian p-groups.
//!
//! The crate models the quotient rings `Z[X,Y]/A` exactly ([`quotient`]),
//! builds the groups themselves as modules with commuting actions
//! ([`groups`]), names the ideal families that occur as annihilators
//! ([`families`]), and runs verification campaigns over parameter grids
//! ([`harness`]).

pub mod bipoly;
pub mod families;
pub mod groups;
pub mod harness;
pub mod quotient;
pub mod zlinalg;

pub use bipoly::{parse_poly, parse_poly_list, trace_poly_x, trace_poly_xy, BiPoly, Monomial};
pub use zlinalg::{abelian_type, hnf, snf, AbelianType, IntMat, Lattice};

pub(crate) mod jsonnum {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde_json::Value;

    /// JSON number when the value fits in `i64`, decimal string otherwise.
    pub fn to_value(x: &BigInt) -> Value {
        match x.to_i64() {
            Some(v) => Value::from(v),
            None => Value::String(x.to_string()),
        }
    }
}
