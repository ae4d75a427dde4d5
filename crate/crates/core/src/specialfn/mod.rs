//! Special functions and the numerical utilities the kernel code leans on.

mod erfc;
mod expint;
mod quadrature;
mod richardson;

pub use erfc::{erfc_real, erfcx};
pub use expint::{
    expint_e1_complex, expint_e1_complex_scaled, expint_e1_scaled, expint_ei, expint_ei_complex,
    expint_ei_complex_scaled, EULER_GAMMA,
};
pub use quadrature::{
    integrate_adaptive, integrate_damped_tail, integrate_damped_tail_with_scale,
    integrate_with_breaks, QuadratureResult, MAX_PANELS,
};
pub use richardson::{
    extract_linear_coefficient, extract_linear_coefficient_with_floor, extrapolate_to_zero, DEFAULT_LEVELS,
};
