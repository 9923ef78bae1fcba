//! P-recursive coefficient streams and D-finite machinery: recurrence
//! expansion, the ODE satisfied by an algebraic branch, ODE-to-recurrence
//! conversion, prime-count growth profiles and p-adic valuation envelopes.

mod ode;
mod poly1;
mod profile;
mod recurrence;

pub use ode::{algebraic_to_ode, LinearODE};
pub use poly1::{IntPoly, QPoly, QRat};
pub use profile::{
    padic_profile, prime_count_profile, prime_count_profile_with_cap, GrowthEntry,
    GrowthReport, PadicProfile,
};
pub use recurrence::{ode_to_recurrence, PRecurrence};
