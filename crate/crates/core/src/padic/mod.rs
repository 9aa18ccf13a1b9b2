//! p-adic integration on `Z_p`: exact functionals and finite Riemann sums.

pub mod functionals;
pub mod numeric;

pub use functionals::{
    bosonic_integral, degenerate_witt, degenerate_witt_order, degenerate_witt_order_table, fermionic_integral, iterated_integral,
    iterated_integral_in_order, witt, witt_order, witt_order_table, Kind, MultiIntegrand, PolyIntegrand,
};
pub use numeric::{
    convergence_check, fermionic_riemann, padic_valuation, volkenborn_riemann, ConvergenceReport,
    ConvergenceRow, PadicApprox,
};
