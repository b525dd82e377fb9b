//! Toric ideals of monomial configurations, with exact binomial Gröbner
//! bases for nested configurations and configurations of Segre-Veronese type.

pub mod error;
pub mod fiber;
pub mod groebner;
pub mod io;
pub mod lattice;
pub mod lp;
pub mod nested;
pub mod order;
pub mod ring;
pub mod segre_veronese;
pub mod toric;

pub use error::{Error, Result};
pub use groebner::{
    buchberger, check_groebner_basis, is_groebner_basis_of, s_pair, verify_marking, Binomial, GroebnerCheck,
    MarkedBasis, Provenance, WeightCertificate,
};
pub use nested::{build_nested, merged_configuration, KeyLemmaOutcome, NestedOrders, NestedSystem};
pub use order::{MonomialOrder, OrderKind, TieBreak};
pub use ring::{Monomial, Ring, Variable};
pub use segre_veronese::{sort_string, sorting_gb, sv_configuration, RangeConstraint, SegreVeroneseSpec};
pub use toric::{check_configuration, kernel_enumerate, toric_generators, Configuration, Presentation};
