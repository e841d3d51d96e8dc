//! Resource caps shared by every potentially unbounded computation.

use std::time::{Duration, Instant};

use crate::error::{Error, ResourceKind, Result};

pub const DEFAULT_DEGREE_GUARD: u32 = 40;
pub const DEFAULT_SATURATION_CAP: usize = 50;
pub const DEFAULT_MACAULAY_THRESHOLD: usize = 10_000_000;

#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest total degree any intermediate Gröbner-basis polynomial may reach.
    pub degree_guard: u32,
    /// Iteration cap for colon-ideal stabilization during saturation.
    pub saturation_cap: usize,
    /// Macaulay matrices with more cells (rows × columns) than this are refused,
    /// and automatic method selection falls back to Gröbner bases above it.
    pub macaulay_threshold: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            degree_guard: DEFAULT_DEGREE_GUARD,
            saturation_cap: DEFAULT_SATURATION_CAP,
            macaulay_threshold: DEFAULT_MACAULAY_THRESHOLD,
            deadline: None,
        }
    }
}

impl Limits {
    pub fn with_degree_guard(mut self, guard: u32) -> Self {
        self.degree_guard = guard;
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub(crate) fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Resource(ResourceKind::Timeout)),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_degree(&self, degree: u32) -> Result<()> {
        if degree > self.degree_guard {
            return Err(Error::Resource(ResourceKind::DegreeGuard {
                degree,
                cap: self.degree_guard,
            }));
        }
        Ok(())
    }
}
