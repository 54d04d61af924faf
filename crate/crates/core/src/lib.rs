//! Exact character-degree arithmetic for almost simple groups with socle
//! ²G₂(q), q = 3^f, and a chief-factor elimination engine built on it.

pub mod cli;
pub mod elimination;
pub mod exactmath;
pub mod lie_data;
pub mod ree;
