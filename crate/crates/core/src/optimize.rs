//! Derivative-free simplex descent in two dimensions.

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Stop once every vertex is within this distance of the best one...
    pub x_tolerance: f64,
    /// ...and the objective spread across the simplex is below this.
    pub f_tolerance: f64,
    pub max_evals: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            x_tolerance: 1e-8,
            f_tolerance: 1e-10,
            max_evals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SimplexResult {
    pub x: [f64; 2],
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn lerp(a: [f64; 2], b: [f64; 2], t: f64) -> [f64; 2] {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Nelder-Mead from `start` with an axis-aligned initial simplex of size `step`.
pub fn nelder_mead<F>(mut f: F, start: [f64; 2], step: [f64; 2], opts: SimplexOptions) -> SimplexResult
where
    F: FnMut([f64; 2]) -> f64,
{
    let evals = std::cell::Cell::new(0usize);
    let mut eval = |x: [f64; 2]| {
        evals.set(evals.get() + 1);
        f(x)
    };
    let mut pts = [start, [start[0] + step[0], start[1]], [start[0], start[1] + step[1]]];
    let mut vals = [eval(pts[0]), eval(pts[1]), eval(pts[2])];
    let mut converged = false;

    loop {
        // order: best, middle, worst
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = [pts[idx[0]], pts[idx[1]], pts[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];

        let size = dist(pts[0], pts[1]).max(dist(pts[0], pts[2]));
        if size < opts.x_tolerance && vals[2] - vals[0] < opts.f_tolerance {
            converged = true;
            break;
        }
        if evals.get() >= opts.max_evals {
            break;
        }

        let centroid = lerp(pts[0], pts[1], 0.5);
        let reflected = lerp(centroid, pts[2], -REFLECT);
        let fr = eval(reflected);
        if fr < vals[0] {
            let expanded = lerp(centroid, pts[2], -EXPAND);
            let fe = eval(expanded);
            if fe < fr {
                pts[2] = expanded;
                vals[2] = fe;
            } else {
                pts[2] = reflected;
                vals[2] = fr;
            }
            continue;
        }
        if fr < vals[1] {
            pts[2] = reflected;
            vals[2] = fr;
            continue;
        }
        let (target, ft) = if fr < vals[2] {
            (reflected, fr)
        } else {
            (pts[2], vals[2])
        };
        let contracted = lerp(centroid, target, CONTRACT);
        let fc = eval(contracted);
        if fc < ft {
            pts[2] = contracted;
            vals[2] = fc;
            continue;
        }
        for k in 1..3 {
            pts[k] = lerp(pts[0], pts[k], SHRINK);
            vals[k] = eval(pts[k]);
        }
    }

    SimplexResult {
        x: pts[0],
        value: vals[0],
        evals: evals.get(),
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let r = nelder_mead(
            |x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 0.5).powi(2),
            [0.0, 0.0],
            [0.3, 0.3],
            SimplexOptions::default(),
        );
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-7 && (r.x[1] + 0.5).abs() < 1e-7);
    }

    #[test]
    fn rosenbrock() {
        let r = nelder_mead(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            [-1.2, 1.0],
            [0.1, 0.1],
            SimplexOptions {
                max_evals: 10_000,
                ..Default::default()
            },
        );
        assert!(r.value < 1e-12, "{r:?}");
    }

    #[test]
    fn respects_eval_budget() {
        let r = nelder_mead(
            |x| x[0].sin() + x[1],
            [0.0, 0.0],
            [1.0, 1.0],
            SimplexOptions {
                max_evals: 20,
                ..Default::default()
            },
        );
        assert!(!r.converged);
        assert!(r.evals <= 22);
    }
}
