use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned rectangle `[x_min, x_max] × [y_min, y_max]` in the `s`-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchWindow {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub max_subdivision_depth: usize,
    /// Initial samples per edge before adaptive refinement.
    pub boundary_samples_init: usize,
}

impl SearchWindow {
    pub const DEFAULT_DEPTH: usize = 14;
    pub const DEFAULT_SAMPLES: usize = 16;

    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let w = Self {
            x_min,
            x_max,
            y_min,
            y_max,
            max_subdivision_depth: Self::DEFAULT_DEPTH,
            boundary_samples_init: Self::DEFAULT_SAMPLES,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite());
        if !finite || !(self.x_min < self.x_max) || !(self.y_min < self.y_max) {
            return Err(Error::Domain(format!(
                "invalid window [{}, {}] x [{}, {}]",
                self.x_min, self.x_max, self.y_min, self.y_max
            )));
        }
        if self.boundary_samples_init == 0 {
            return Err(Error::Domain("boundary_samples_init must be positive".into()));
        }
        Ok(())
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re >= self.x_min && s.re <= self.x_max && s.im >= self.y_min && s.im <= self.y_max
    }

    pub fn strictly_contains(&self, s: Complex64) -> bool {
        s.re > self.x_min && s.re < self.x_max && s.im > self.y_min && s.im < self.y_max
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    /// Distance from `s` to the boundary curve.
    pub fn boundary_distance(&self, s: Complex64) -> f64 {
        let dx = if s.re < self.x_min {
            self.x_min - s.re
        } else if s.re > self.x_max {
            s.re - self.x_max
        } else {
            0.0
        };
        let dy = if s.im < self.y_min {
            self.y_min - s.im
        } else if s.im > self.y_max {
            s.im - self.y_max
        } else {
            0.0
        };
        if dx > 0.0 || dy > 0.0 {
            return dx.hypot(dy);
        }
        (s.re - self.x_min).min(self.x_max - s.re).min(s.im - self.y_min).min(self.y_max - s.im)
    }

    pub fn inflate(&self, by: f64) -> Self {
        Self { x_min: self.x_min - by, x_max: self.x_max + by, y_min: self.y_min - by, y_max: self.y_max + by, ..*self }
    }

    /// Mirror image under complex conjugation.
    pub fn conjugate(&self) -> Self {
        Self { y_min: -self.y_max, y_max: -self.y_min, ..*self }
    }

    /// Four children split at fractions `fx`, `fy` of the width and height,
    /// ordered bottom-left, bottom-right, top-left, top-right.
    pub fn quadrisect(&self, fx: f64, fy: f64) -> [Self; 4] {
        let xm = self.x_min + fx * self.width();
        let ym = self.y_min + fy * self.height();
        let cell = |x0, x1, y0, y1| Self { x_min: x0, x_max: x1, y_min: y0, y_max: y1, ..*self };
        [
            cell(self.x_min, xm, self.y_min, ym),
            cell(xm, self.x_max, self.y_min, ym),
            cell(self.x_min, xm, ym, self.y_max),
            cell(xm, self.x_max, ym, self.y_max),
        ]
    }

    /// Counter-clockwise corners starting at `(x_min, y_min)`.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.x_min, self.y_min),
            Complex64::new(self.x_max, self.y_min),
            Complex64::new(self.x_max, self.y_max),
            Complex64::new(self.x_min, self.y_max),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate() {
        assert!(SearchWindow::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(SearchWindow::new(0.0, 1.0, 2.0, 1.0).is_err());
        assert!(SearchWindow::new(0.0, f64::NAN, 0.0, 1.0).is_err());
    }

    #[test]
    fn geometry() {
        let w = SearchWindow::new(-1.0, 2.0, 0.0, 4.0).unwrap();
        assert_eq!(w.center(), Complex64::new(0.5, 2.0));
        assert!((w.boundary_distance(Complex64::new(1.0, 0.0))).abs() < 1e-15);
        assert!((w.boundary_distance(Complex64::new(0.0, 1.0)) - 1.0).abs() < 1e-15);
        assert!((w.boundary_distance(Complex64::new(3.0, 5.0)) - 2f64.sqrt()).abs() < 1e-15);
        let kids = w.quadrisect(0.5, 0.25);
        let area: f64 = kids.iter().map(|k| k.width() * k.height()).sum();
        assert!((area - 12.0).abs() < 1e-12);
        assert_eq!(w.conjugate().y_min, -4.0);
    }
}
