//! Independent spectral oracle: the full `|G| x |G|` weighted adjacency
//! matrix, diagonalized by a hand-rolled cyclic Jacobi sweep.
//!
//! This path shares no code with the collapsed-matrix route (which goes
//! through the class tensor and a Schur decomposition); property tests pit
//! the two against each other on every small group they touch.

use crate::derangement::ActionProfile;
use crate::spectra::ClassWeighting;

/// Dense symmetric matrix `M[u][v] = f(u^{-1} v)`, row-major.
pub fn dense_weighted_adjacency(profile: &ActionProfile, weighting: &ClassWeighting) -> Vec<f64> {
    let table = profile.action().group();
    let n = table.order();
    let w = weighting.weights();
    let mut m = vec![0.0f64; n * n];
    for u in 0..n as u32 {
        let ui = table.inv(u);
        for v in 0..n as u32 {
            let r = table.mul(ui, v);
            m[u as usize * n + v as usize] = w[table.class_of(r) as usize];
        }
    }
    m
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let scale: f64 = a
        .iter()
        .fold(0.0f64, |acc, &x| acc.max(x.abs()))
        .max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= 1e-12 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-14 * scale {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// Distinct eigenvalues of the full weighted adjacency matrix, ascending,
/// clustered at absolute tolerance `1e-6 * max(1, |lambda|_max)`.
pub fn dense_spectrum(profile: &ActionProfile, weighting: &ClassWeighting) -> Vec<f64> {
    let table = profile.action().group();
    let n = table.order();
    let m = dense_weighted_adjacency(profile, weighting);
    let eigs = jacobi_eigenvalues(m, n);
    let scale = eigs.iter().fold(1.0f64, |acc, &x| acc.max(x.abs()));
    let tol = 1e-6 * scale;
    let mut out: Vec<f64> = Vec::new();
    let mut run: Vec<f64> = Vec::new();
    for &e in &eigs {
        if let Some(&last) = run.last() {
            if (e - last).abs() > tol {
                out.push(run.iter().sum::<f64>() / run.len() as f64);
                run.clear();
            }
        }
        run.push(e);
    }
    if !run.is_empty() {
        out.push(run.iter().sum::<f64>() / run.len() as f64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_on_known_matrix() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3
        let eigs = jacobi_eigenvalues(vec![2.0, 1.0, 1.0, 2.0], 2);
        assert!((eigs[0] - 1.0).abs() < 1e-10);
        assert!((eigs[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn jacobi_diagonal() {
        let eigs = jacobi_eigenvalues(vec![3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 7.0], 3);
        assert_eq!(eigs.len(), 3);
        assert!((eigs[0] + 1.0).abs() < 1e-12);
        assert!((eigs[2] - 7.0).abs() < 1e-12);
    }
}
