//! Large-k behaviour of F̃′_k: the asymptotic expansion, the lower-bound check,
//! the E-term bookkeeping and the angular window of the first extremum.

pub mod e_terms;
pub mod expansion;
pub mod lower_bound;
pub mod theta;

pub use e_terms::e_terms;
pub use expansion::{asymptotic_enclosure, f_tilde_prime_asymptotic, t_coeff, ExpansionTerm, RemainderBound};
pub use lower_bound::check_lower_bound_large_k;
pub use theta::theta_window_samples;
