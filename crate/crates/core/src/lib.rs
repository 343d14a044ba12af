//! Orthogonal-polynomial expansions of functions with algebraic and
//! logarithmic singularities, oscillatory Bessel transforms, and tools to
//! measure decay rates of coefficients, projection errors and transforms.

pub mod asymp;
pub mod cli;
pub mod descr;
pub mod expand;
pub mod numeric;
pub mod par;
pub mod quad;
pub mod specfun;
