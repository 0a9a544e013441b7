//! Extended-range arithmetic, prime generation, and rigorously bracketed series.

mod logreal;
mod series;
mod sieve;

pub use logreal::{Bracket, LogReal, QScale, Sign};
pub use series::{
    li, li_points, prime_series, registered_prime_terms, sqrt_shift_geometric_sum, sum_log_n_over_n2,
    SeriesKind,
};
pub use sieve::{is_prime, primes_upto, ArithTables, SIEVE_BUDGET};
