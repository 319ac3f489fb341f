use nalgebra::{DMatrix, DVector};

use super::functional::{closure_residual, functional_s, gradient_s, hessian_s};
use super::problem::PatternProblem;
use super::PatternError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Stop when the largest closure violation is at most this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-10, max_iter: 50 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternSolution {
    /// Log-radii `ρ = log r`.
    pub rho: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    /// Residual before each Newton step and at the end.
    pub history: Vec<f64>,
}

impl PatternSolution {
    pub fn radii(&self) -> Vec<f64> {
        self.rho.iter().map(|r| r.exp()).collect()
    }
}

fn recenter(rho: &mut [f64]) {
    let mean = rho.iter().sum::<f64>() / rho.len() as f64;
    for r in rho.iter_mut() {
        *r -= mean;
    }
}

/// Minimizes `S` by Newton's method with backtracking. Dirichlet nodes are
/// held fixed; a pure Neumann problem is solved on the slice `Σρ = 0`.
pub fn solve(p: &PatternProblem, opts: &SolverOptions) -> Result<PatternSolution, PatternError> {
    let pure_neumann = !p.has_dirichlet();
    if pure_neumann {
        let imb = p.neumann_imbalance();
        if imb.abs() > 1e-9 * (1.0 + std::f64::consts::PI * p.edges().len() as f64) {
            return Err(PatternError::Unsolvable(format!(
                "Neumann data has sum Φ − π|E| = {imb:.3e}; no critical point exists"
            )));
        }
    }
    let free: Vec<usize> = (0..p.node_count()).filter(|&j| p.is_free(j)).collect();
    let mut rho = p.initial_rho();
    if pure_neumann {
        recenter(&mut rho);
    }
    let mut history = Vec::new();
    let nf = free.len();
    for iter in 0..=opts.max_iter {
        let res = closure_residual(p, &rho);
        history.push(res);
        if res <= opts.tol || nf == 0 {
            return Ok(PatternSolution { rho, residual: res, iterations: iter, history });
        }
        if iter == opts.max_iter {
            return Err(PatternError::NotConverged { iterations: iter, residual: res });
        }
        let g_all = gradient_s(p, &rho);
        let h_all = hessian_s(p, &rho);
        let g = DVector::from_iterator(nf, free.iter().map(|&j| g_all[j]));
        let mut h = DMatrix::from_fn(nf, nf, |a, b| h_all[(free[a], free[b])]);
        if pure_neumann {
            h.add_scalar_mut(1.0 / nf as f64);
        }
        let chol = h.cholesky().ok_or_else(|| {
            PatternError::NotConverged { iterations: iter, residual: res }
        })?;
        let delta = chol.solve(&(-&g));
        let slope = g.dot(&delta);
        let s0 = functional_s(p, &rho);
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let mut trial = rho.clone();
            for (a, &j) in free.iter().enumerate() {
                trial[j] += t * delta[a];
            }
            let s1 = functional_s(p, &trial);
            if s1 <= s0 + 1e-4 * t * slope + 1e-14 * (1.0 + s0.abs()) {
                accepted = Some(trial);
                break;
            }
            t *= 0.5;
        }
        match accepted {
            Some(mut r) => {
                if pure_neumann {
                    recenter(&mut r);
                }
                rho = r;
            }
            None => return Err(PatternError::NotConverged { iterations: iter, residual: res }),
        }
    }
    unreachable!("loop returns on the last iteration")
}
