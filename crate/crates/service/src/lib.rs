//! Request handling shared by the `locuscover` binary and its HTTP server.

mod compute;
mod selftest;
mod server;

pub use compute::{
    handle_compute, handle_compute_bytes, ComputeRequest, ComputeResponse, PlotRequest,
    ServiceError, DEFAULT_BBOX, DEFAULT_RESOLUTION, MAX_RESOLUTION,
};
pub use selftest::{selftest, SelftestReport};
pub use server::{router, DEFAULT_PORT};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
