//! Generic numerical building blocks used by the physics modules.

pub mod poly;
pub mod quad;
