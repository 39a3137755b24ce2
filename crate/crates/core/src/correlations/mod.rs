//! Entropic and correlation measures.

mod discord;
mod entanglement;
mod entropy;
mod monogamy;

pub use discord::{
    discord, zero_discord_witness, DiscordOptions, DiscordProblem, DiscordResult, MeasuredEntropy, MeasurementBasis,
};
pub use entanglement::{concurrence, entanglement_of_formation, eof_from_concurrence};
pub use entropy::{binary_entropy, conditional_entropy, entropy_of_spectrum, von_neumann_entropy, LogBase};
pub use monogamy::{discord_from_monogamy, monogamy_residual, MonogamyTerms, Tripartite};
