//! Exact univariate algebra over ℚ.

pub mod charpoly;
pub mod cyclotomic;
pub mod factor;
pub mod integer;
pub mod modp;
pub mod poly;
pub mod psi;
pub mod ratfun;

pub use charpoly::charpoly;
pub use cyclotomic::{cyclotomic, euler_phi, real_cyclotomic, sharp, unsharp};
pub use factor::{factor, square_free};
pub use poly::RatPoly;
pub use psi::{pole_support, psi, psi_parts, psi_self};
pub use ratfun::RatFun;
