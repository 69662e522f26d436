//! Fractional graph powers `G^{m/n}` and near-optimal colourings of
//! `G^{k/k}`, with exact oracles and verifiers for small instances.

pub mod colouring;
pub mod corpus;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod star;
pub mod transversal;
