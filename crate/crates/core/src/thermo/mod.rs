// SPDX-License-Identifier: Apache-2.0

//! First-law bookkeeping: heat and work under four formulations, entropy
//! production and the heat-based entropy balance.

mod ledger;
mod split;

use std::fmt;
use std::str::FromStr;

pub use ledger::{ledger, Residuals, ThermoSample};
pub use split::{
    differential_split, entropy_production_step, operational_split, EntropyProductionStep, Environment,
    OperationalSplit, ProcessEndpoints, StepSplit, MATCH_AMBIGUITY,
};

use crate::error::{invalid, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formulation {
    Standard,
    EntropyBased,
    ErgotropyBased,
    Operational,
}

impl Formulation {
    pub const ALL: [Formulation; 4] = [
        Formulation::Standard,
        Formulation::EntropyBased,
        Formulation::ErgotropyBased,
        Formulation::Operational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formulation::Standard => "standard",
            Formulation::EntropyBased => "entropy",
            Formulation::ErgotropyBased => "ergotropy",
            Formulation::Operational => "operational",
        }
    }
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Formulation::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| invalid("formulation", format!("unknown formulation {s:?}")))
    }
}
