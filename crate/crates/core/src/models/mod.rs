//! Part-set models: grammar, admissibility, and the analytic data of `L_Λ`.

mod admissible;
mod ldata;
mod leval;
mod roots;
mod spec;

pub use admissible::{check_admissible, Admissibility};
pub use ldata::{exact_neg_value, l_data, polynomial_poles, LData, NEG_ORDER};
pub use leval::{l_eval, l_eval_polynomial, polynomial_truncation};
pub use roots::polynomial_roots;
pub use spec::{parse_spec, IntPolynomial, LambdaSpec, Progression};
