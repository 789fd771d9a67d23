pub mod polyring;

pub use polyring::{LaurentPoly, Monomial, NewtonPolygon, PolyError, PrimitiveDirection};

pub mod exec;
pub mod fusion;
pub mod hoca;
pub mod mobility;
pub mod oracle;
pub mod pauli;
pub mod random;
pub mod render;
pub mod worked;

pub use exec::Execution;
