//! Euler's totient `Φ` and the sum-of-divisors function `σ` on the
//! polynomial ring `F_q[x]`.
//!
//! The crate is organised bottom-up:
//!
//! * [`numtheory`]: integer-side helpers (Möbius, factorization,
//!   primitive prime divisors, solution counting).
//! * [`gfpoly`]: finite fields `F_{p^s}`, polynomial arithmetic,
//!   factorization and enumeration of monic/irreducible polynomials.
//! * [`totient`]: `Φ`, `σ`, signatures and their factored forms.
//! * [`collision`]: deciding `Φ(f) = Φ(g)` from signatures alone.
//! * [`preimage`]: value membership, exact preimage counts, brute-force
//!   preimage listing and the witness constructions built on them.
//! * [`erdos`]: common values of `Φ` and `σ`.
//! * [`density`]: the value set of `Φ` below a bound.
//! * [`verify`]: self-check suites used by the command-line driver.

pub mod collision;
pub mod density;
pub mod erdos;
mod error;
pub mod gfpoly;
pub mod numtheory;
pub mod preimage;
pub mod totient;
pub mod verify;

pub use error::{Error, Result};
pub use gfpoly::{FieldSpec, Factorization, Poly};
pub use numtheory::BigNat;
pub use totient::{PhiValue, SigmaExponents, Signature};
