use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;

use super::dilog::im_li2_i_exp;
use super::problem::{NodeData, PatternProblem};
use crate::geom::sum::{compensated_sum, KahanSum};

/// `S(ρ) = Σ_{(j,k)} [F(ρₖ−ρⱼ) + F(ρⱼ−ρₖ) − (π/2)(ρⱼ+ρₖ)] + Σⱼ Φⱼ ρⱼ`
/// with `F(x) = Im Li₂(i eˣ)`; Dirichlet nodes contribute no `Φ` term.
pub fn functional_s(p: &PatternProblem, rho: &[f64]) -> f64 {
    let mut s = KahanSum::new();
    for &(j, k) in p.edges() {
        let d = rho[k] - rho[j];
        s.add(im_li2_i_exp(d));
        s.add(im_li2_i_exp(-d));
        s.add(-FRAC_PI_2 * (rho[j] + rho[k]));
    }
    for (j, n) in p.nodes().iter().enumerate() {
        if let NodeData::Neumann(phi) = n.data {
            s.add(phi * rho[j]);
        }
    }
    s.value()
}

/// `∂S/∂ρⱼ = Φⱼ − 2 Σₖ arctan e^{ρₖ−ρⱼ}` for every node; the entry of a
/// Dirichlet node is reported with `Φ = 0`.
pub fn gradient_s(p: &PatternProblem, rho: &[f64]) -> Vec<f64> {
    p.nodes()
        .iter()
        .enumerate()
        .map(|(j, n)| {
            let phi = match n.data {
                NodeData::Neumann(phi) => phi,
                NodeData::Dirichlet(_) => 0.0,
            };
            let terms = n.neighbors.iter().map(|&k| -2.0 * (rho[k] - rho[j]).exp().atan());
            compensated_sum(std::iter::once(phi).chain(terms))
        })
        .collect()
}

/// Weighted graph Laplacian with weights `1/cosh(ρₖ − ρⱼ)`.
pub fn hessian_s(p: &PatternProblem, rho: &[f64]) -> DMatrix<f64> {
    let n = p.node_count();
    let mut h = DMatrix::<f64>::zeros(n, n);
    for &(j, k) in p.edges() {
        let w = 1.0 / (rho[k] - rho[j]).cosh();
        h[(j, k)] -= w;
        h[(k, j)] -= w;
        h[(j, j)] += w;
        h[(k, k)] += w;
    }
    h
}

/// Largest closure violation over the free nodes.
pub fn closure_residual(p: &PatternProblem, rho: &[f64]) -> f64 {
    gradient_s(p, rho)
        .iter()
        .enumerate()
        .filter(|(j, _)| p.is_free(*j))
        .map(|(_, g)| g.abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::problem::square_grid;

    #[test]
    fn regular_grid_is_critical() {
        let p = square_grid(4, 4, false).unwrap();
        let rho = vec![0.0; 16];
        assert!(closure_residual(&p, &rho) < 1e-15);
        let h = hessian_s(&p, &rho);
        for j in 0..16 {
            let row: f64 = (0..16).map(|k| h[(j, k)]).sum();
            assert!(row.abs() < 1e-15);
        }
        assert_eq!(h[(0, 1)], -1.0);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let p = square_grid(3, 4, false).unwrap();
        let rho: Vec<f64> = (0..12).map(|j| 0.3 * (j as f64 * 1.7).sin()).collect();
        let g = gradient_s(&p, &rho);
        let h = 1e-6;
        for j in 0..12 {
            let mut a = rho.clone();
            let mut b = rho.clone();
            a[j] += h;
            b[j] -= h;
            let fd = (functional_s(&p, &a) - functional_s(&p, &b)) / (2.0 * h);
            assert!((fd - g[j]).abs() < 1e-6 * (1.0 + g[j].abs()), "{j}: {fd} vs {}", g[j]);
        }
    }
}
