//! Restricted partition functions `p_Λ(n)`: exact counts, the analytic data of
//! `L_Λ(z) = Σ_{m∈Λ} m^{−z}`, closed-form asymptotics, and saddle-point numerics.

pub mod error;
pub mod asymptotic;
pub mod cli;
pub mod exact;
pub mod models;
pub mod saddle;
mod precision;
pub mod special;

pub use error::{Error, Result};
pub use exact::{exact_counts, f_weights, pentagonal_counts, BigCountTable};
pub use models::{check_admissible, l_data, l_eval, parse_spec, LData, LambdaSpec};
pub use precision::Precision;
