pub mod additive;
pub mod cli;
pub mod coeff;
pub mod diagram;
pub mod freyd;
pub mod homology;
pub mod quotient;
