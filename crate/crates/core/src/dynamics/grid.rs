use crate::error::{Error, Result};

/// Sampling times `0, dt, 2 dt, ...` up to `t_end`. A final partial step is
/// appended when `t_end` is not a multiple of `dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
    dt: f64,
}

impl TimeGrid {
    pub fn new(t_end: f64, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidTimeGrid(format!("dt must be positive, got {dt}")));
        }
        if !(t_end.is_finite() && t_end >= dt) {
            return Err(Error::InvalidTimeGrid(format!(
                "t_end must be at least dt, got t_end = {t_end}, dt = {dt}"
            )));
        }
        let steps = (t_end / dt).round();
        let mut times: Vec<f64>;
        if (steps * dt - t_end).abs() <= 1e-9 * t_end.max(1.0) {
            times = (0..=steps as usize).map(|k| k as f64 * dt).collect();
            *times.last_mut().unwrap() = t_end;
        } else {
            let whole = (t_end / dt).floor() as usize;
            times = (0..=whole).map(|k| k as f64 * dt).collect();
            times.push(t_end);
        }
        Ok(Self { times, dt })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_end(&self) -> f64 {
        *self.times.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid() {
        let g = TimeGrid::new(10.0, 0.01).unwrap();
        assert_eq!(g.len(), 1001);
        assert_eq!(g.times()[0], 0.0);
        assert_eq!(g.t_end(), 10.0);
        assert!(g.times().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn partial_last_step() {
        let g = TimeGrid::new(1.05, 0.1).unwrap();
        assert_eq!(g.len(), 12);
        assert!((g.times()[10] - 1.0).abs() < 1e-12);
        assert_eq!(g.t_end(), 1.05);
    }

    #[test]
    fn rejects_bad_steps() {
        assert!(TimeGrid::new(1.0, 0.0).is_err());
        assert!(TimeGrid::new(0.05, 0.1).is_err());
        assert!(TimeGrid::new(f64::NAN, 0.1).is_err());
    }
}
