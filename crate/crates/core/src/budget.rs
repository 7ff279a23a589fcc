use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Resource limits shared by the Gröbner engine, the cover recursion and the
/// factorizer. All limits are checked cooperatively; exceeding one surfaces as
/// [`Error::BudgetExceeded`] or [`Error::FactorBudget`].
#[derive(Debug, Clone)]
pub struct Budget {
    pub deadline: Option<Instant>,
    /// Maximum number of terms of any intermediate polynomial.
    pub max_terms: usize,
    /// Maximum bit length of any intermediate integer coefficient.
    pub max_coeff_bits: u64,
    /// Maximum number of polynomials kept during one Buchberger run.
    pub max_basis: usize,
    pub cover_max_depth: usize,
    pub cover_max_segments: usize,
    /// Largest total degree accepted by the bivariate factorizer.
    pub factor_max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            deadline: None,
            max_terms: 50_000,
            max_coeff_bits: 200_000,
            max_basis: 4_000,
            cover_max_depth: 32,
            cover_max_segments: 512,
            factor_max_degree: 12,
        }
    }
}

impl Budget {
    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => {
                Err(Error::BudgetExceeded("time limit reached".into()))
            }
            _ => Ok(()),
        }
    }

    pub(crate) fn check_size(&self, terms: usize, bits: u64) -> Result<()> {
        if terms > self.max_terms {
            return Err(Error::BudgetExceeded(format!(
                "polynomial with {terms} terms exceeds limit {}",
                self.max_terms
            )));
        }
        if bits > self.max_coeff_bits {
            return Err(Error::BudgetExceeded(format!(
                "coefficient of {bits} bits exceeds limit {}",
                self.max_coeff_bits
            )));
        }
        Ok(())
    }
}
