//! Physical scenario generation: user geometry, transmit-antenna
//! correlation, power-delay profile, multipath tap sampling, orthogonal
//! pilots and zero-forcing channel estimation.

mod correlation;
mod geometry;
mod pdp;
mod pilot;
mod realization;

pub use correlation::{jakes_correlation, CorrelationMatrix};
pub use geometry::{place_users, UserGeometry};
pub use pdp::{power_delay_profile, PowerDelayProfile};
pub use pilot::{build_pilot_book, shortcut_estimate, zf_estimate, ChannelEstimate, PilotBook};
pub use realization::{sample_channel, ChannelRealization};
