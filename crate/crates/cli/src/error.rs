use frieze_core::arith::ArithError;
use frieze_core::cluster::ClusterError;
use frieze_core::invariants::InvariantError;
use frieze_core::orbit::OrbitError;
use frieze_core::quiver::QuiverError;
use frieze_core::variety::VarietyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("non-generic specialization: {0}")]
    NonGeneric(String),
    #[error("bound exceeded: {0}")]
    Bound(String),
    #[error("golden mismatch in case {case}:\n{diff}")]
    Golden { case: String, diff: String, report: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::NonGeneric(_) => 2,
            CliError::Bound(_) => 3,
            CliError::Golden { .. } => 4,
        }
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::TermBudgetExceeded { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::NonGeneric { .. } | OrbitError::ZeroStartCoordinate { .. } => {
                CliError::NonGeneric(e.to_string())
            }
            OrbitError::BudgetExceeded { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ClusterError> for CliError {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::Arith(a) => a.into(),
            ClusterError::LaurentCertificationFailed { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<VarietyError> for CliError {
    fn from(e: VarietyError) -> Self {
        match e {
            VarietyError::Orbit(o) => o.into(),
            VarietyError::Cluster(c) => c.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::NotInvariant { .. } | InvariantError::NoSymmetryPair => CliError::Bound(e.to_string()),
            InvariantError::Orbit(o) => o.into(),
            InvariantError::Cluster(c) => c.into(),
            InvariantError::Arith(a) => a.into(),
            InvariantError::Quiver(q) => q.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let orbit = OrbitError::ZeroStartCoordinate { vertex: 1 };
        assert_eq!(CliError::from(orbit).exit_code(), 2);
        let budget = OrbitError::BudgetExceeded { step: 3, bits: 20, limit: 10 };
        assert_eq!(CliError::from(VarietyError::Orbit(budget)).exit_code(), 3);
        let terms = ArithError::TermBudgetExceeded { terms: 9, limit: 5 };
        assert_eq!(CliError::from(ClusterError::Arith(terms)).exit_code(), 3);
        assert_eq!(CliError::from(InvariantError::NotInvariant { k_max: 2 }).exit_code(), 3);
        assert_eq!(CliError::from(InvariantError::IdentityAutomorphism).exit_code(), 1);
        assert_eq!(CliError::from(QuiverError::NotAcyclic).exit_code(), 1);
    }
}
