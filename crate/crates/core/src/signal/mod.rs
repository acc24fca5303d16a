//! Signal model: constellations, steering vectors, channel and transmit
//! draws, and the complex-to-real lifting conventions.
//!
//! Conventions used throughout:
//!
//! * Complex quantities of an `n_rx x users` system are lifted to real ones
//!   of size `N x K` with `N = 2 n_rx`, `K = 2 users` (real parts stacked
//!   over imaginary parts; matrices in `[[Re, -Im], [Im, Re]]` block form).
//! * Detected symbol vectors live on the odd-integer amplitude grid
//!   `{±1, ±3, ...}`; the constellation normalization factor scales the
//!   physical channel instead of the symbols, so the average transmitted
//!   complex symbol power is one.

mod channel;
mod constellation;
mod instance;
mod steering;

pub use channel::{draw_channel, ChannelRealization};
pub use constellation::Constellation;
pub use instance::{draw_instance, ebn0_to_noise_var, TransmitInstance};
pub use steering::steering_vector;
