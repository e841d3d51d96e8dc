//! Ideals whose symbolic powers can be computed, with power caches.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{Field, Ring};
use crate::error::{Error, Result};
use crate::groebner::{ideal_equal, Ideal};
use crate::limits::Limits;
use crate::toolkit::{ideal_power, points_defining_ideal, symbolic_power_points, symbolic_power_saturation, PointSet};

/// The ideal of a reduced set of points, known either by its coordinates
/// (symbolic powers are fat-point ideals) or only by generators (symbolic
/// powers are saturations of ordinary powers).
///
/// Ordinary and symbolic powers are cached, so a source shared by several
/// checks computes each power, and each power's Gröbner basis, once.
pub struct SymbolicSource<F: Field> {
    ideal: Ideal<F>,
    points: Option<PointSet<F>>,
    symbolic: Mutex<HashMap<u32, Arc<Ideal<F>>>>,
    ordinary: Mutex<HashMap<u32, Arc<Ideal<F>>>>,
}

impl<F: Field> SymbolicSource<F> {
    fn build(ideal: Ideal<F>, points: Option<PointSet<F>>) -> Self {
        SymbolicSource {
            ideal,
            points,
            symbolic: Mutex::new(HashMap::new()),
            ordinary: Mutex::new(HashMap::new()),
        }
    }

    /// Points given by coordinates; the defining ideal is their intersection.
    pub fn from_points(ring: &Arc<Ring<F>>, points: PointSet<F>, limits: &Limits) -> Result<Self> {
        let ideal = points_defining_ideal(ring, &points, limits)?;
        Ok(Self::build(ideal, Some(points)))
    }

    /// Points together with preferred generators for their ideal; the
    /// generators are checked to define exactly these points.
    pub fn from_points_with_ideal(points: PointSet<F>, ideal: Ideal<F>, limits: &Limits) -> Result<Self> {
        let by_points = points_defining_ideal(ideal.ring(), &points, limits)?;
        if !ideal_equal(&ideal, &by_points, limits)? {
            return Err(Error::precondition(
                "the given generators do not define the given points",
            ));
        }
        Ok(Self::build(ideal, Some(points)))
    }

    /// An ideal the caller asserts to be the radical ideal of finitely many
    /// reduced points.
    pub fn from_radical_ideal(ideal: Ideal<F>) -> Self {
        Self::build(ideal, None)
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        self.ideal.ring()
    }

    pub fn points(&self) -> Option<&PointSet<F>> {
        self.points.as_ref()
    }

    /// `I^(m)`; `I^(1)` is the defining ideal itself.
    pub fn symbolic_power(&self, m: u32, limits: &Limits) -> Result<Arc<Ideal<F>>> {
        if m == 0 {
            return Err(Error::precondition("symbolic power exponent must be at least 1"));
        }
        if let Some(p) = self.symbolic.lock().expect("power cache").get(&m) {
            return Ok(p.clone());
        }
        let power = if m == 1 {
            self.ideal.clone()
        } else {
            match &self.points {
                Some(pts) => symbolic_power_points(self.ring(), pts, m, limits)?,
                None => symbolic_power_saturation(&self.ideal, m, limits)?,
            }
        };
        Ok(self
            .symbolic
            .lock()
            .expect("power cache")
            .entry(m)
            .or_insert_with(|| Arc::new(power))
            .clone())
    }

    /// `I^r`.
    pub fn ordinary_power(&self, r: u32) -> Result<Arc<Ideal<F>>> {
        if r == 0 {
            return Err(Error::precondition("ordinary power exponent must be at least 1"));
        }
        if let Some(p) = self.ordinary.lock().expect("power cache").get(&r) {
            return Ok(p.clone());
        }
        let power = ideal_power(&self.ideal, r)?;
        Ok(self
            .ordinary
            .lock()
            .expect("power cache")
            .entry(r)
            .or_insert_with(|| Arc::new(power))
            .clone())
    }
}
