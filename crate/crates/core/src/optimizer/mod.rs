//! Particle swarm inner solver and the surrogate-driven outer loop.

mod glis;
mod pso;

pub use glis::{glis_init, glis_observe, glis_run, glis_suggest, GlisConfig, GlisResult, GlisState, Phase, SurrogateChoice};
pub use pso::{pso_minimize, PsoConfig, PsoResult};
