//! Weighted-adjacency spectra of derangement graphs and the
//! Delsarte-Hoffman coclique bound.
//!
//! A compatible class function (zero on point-fixing classes, symmetric
//! under inversion) induces a weighted adjacency matrix of the derangement
//! graph. Its distinct eigenvalues coincide with those of the k x k matrix
//! of the weighted connection-set sum acting on the class algebra, so all
//! spectral work happens at class resolution. A small LP tunes the weights
//! to minimize the Hoffman bound.

pub mod oracle;
mod simplex;

use nalgebra::DMatrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::derangement::ActionProfile;

pub use simplex::{solve_lp, Cmp, Constraint, LpError};

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("weighting incompatible with the action: {0}")]
    IncompatibleWeighting(String),
    #[error("collapsed matrix has a non-real eigenvalue (residual {0:.3e})")]
    NonRealSpectrum(f64),
    #[error("degenerate spectrum: need tau < 0 and d > 0, got tau = {tau}, d = {d}")]
    DegenerateSpectrum { tau: f64, d: f64 },
    #[error("weight optimization is unbounded: no derangement classes")]
    Unbounded,
    #[error("weight optimization did not converge after {0} cut rounds")]
    NoConvergence(usize),
    #[error("linear program: {0}")]
    Lp(#[from] LpError),
}

/// A symmetric class function supported on derangement classes: one weight
/// per conjugacy class of the acting group.
#[derive(Debug, Clone)]
pub struct ClassWeighting {
    weights: Vec<f64>,
}

impl ClassWeighting {
    /// Validates compatibility: zero off the derangement classes and equal
    /// weights on inverse-paired classes.
    pub fn new(profile: &ActionProfile, weights: Vec<f64>) -> Result<Self, SpectraError> {
        let table = profile.action().group();
        if weights.len() != table.n_classes() {
            return Err(SpectraError::IncompatibleWeighting(format!(
                "expected {} class weights, got {}",
                table.n_classes(),
                weights.len()
            )));
        }
        for (c, &w) in weights.iter().enumerate() {
            if profile.is_fixing_class(c as u32) && w != 0.0 {
                return Err(SpectraError::IncompatibleWeighting(format!(
                    "nonzero weight on fixing class {}",
                    c
                )));
            }
            let ic = table.inverse_class_of(c as u32) as usize;
            if (weights[ic] - w).abs() > 1e-12 * w.abs().max(1.0) {
                return Err(SpectraError::IncompatibleWeighting(format!(
                    "weight differs on inverse classes {} and {}",
                    c, ic
                )));
            }
        }
        Ok(ClassWeighting { weights })
    }

    /// Weight 1 on every derangement class: the plain adjacency matrix.
    pub fn unit(profile: &ActionProfile) -> Self {
        let k = profile.action().group().n_classes();
        let weights = (0..k as u32)
            .map(|c| if profile.is_fixing_class(c) { 0.0 } else { 1.0 })
            .collect();
        ClassWeighting { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn scale(&self, factor: f64) -> Self {
        ClassWeighting { weights: self.weights.iter().map(|w| w * factor).collect() }
    }
}

/// The weighted class-sum acting on the class algebra: a k x k real matrix
/// whose eigenvalue set equals the spectrum of the full weighted adjacency
/// matrix. Rows all sum to `d`, the total weight.
#[derive(Debug, Clone)]
pub struct CollapsedMatrix {
    k: usize,
    entries: Vec<f64>,
    d: f64,
}

impl CollapsedMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn d(&self) -> f64 {
        self.d
    }
}

/// Builds the collapsed matrix `N[j][i] = sum over weighted support s of
/// w(class(s)) [s^{-1} z_j in C_i]` from the cached class tensor.
pub fn collapse(
    profile: &ActionProfile,
    weighting: &ClassWeighting,
) -> Result<CollapsedMatrix, SpectraError> {
    // re-validate: profiles and weightings can come from different callers
    let weighting = ClassWeighting::new(profile, weighting.weights().to_vec())?;
    let table = profile.action().group();
    let tensor = table.class_tensor();
    let k = tensor.k();
    let w = weighting.weights();
    let mut entries = vec![0.0f64; k * k];
    let mut d = 0.0f64;
    for c in 0..k {
        if w[c] == 0.0 {
            continue;
        }
        d += w[c] * table.class_size(c as u32) as f64;
        for j in 0..k {
            for i in 0..k {
                entries[j * k + i] += w[c] * tensor.count(c, j, i) as f64;
            }
        }
    }
    // row sums are integer combinations of the weights: they must agree
    let scale = d.abs().max(1.0);
    for j in 0..k {
        let row: f64 = entries[j * k..(j + 1) * k].iter().sum();
        if (row - d).abs() > 1e-9 * scale {
            return Err(SpectraError::IncompatibleWeighting(format!(
                "row {} sums to {} instead of {}",
                j, row, d
            )));
        }
    }
    Ok(CollapsedMatrix { k, entries, d })
}

/// Distinct eigenvalues, row sum, and least eigenvalue of a collapsed
/// matrix. Eigenvalues must be real to relative tolerance 1e-7.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub d: f64,
    pub tau: f64,
}

pub fn eigenvalues(matrix: &CollapsedMatrix) -> Result<SpectrumReport, SpectraError> {
    let k = matrix.k;
    let m = DMatrix::from_row_slice(k, k, &matrix.entries);
    let eigs = m.complex_eigenvalues();
    let scale = eigs
        .iter()
        .fold(1.0f64, |acc, e| acc.max(e.re.abs()).max(e.im.abs()));
    let max_im = eigs.iter().fold(0.0f64, |acc, e| acc.max(e.im.abs()));
    if max_im > 1e-7 * scale {
        return Err(SpectraError::NonRealSpectrum(max_im / scale));
    }
    let mut reals: Vec<f64> = eigs.iter().map(|e| e.re).collect();
    reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // cluster to distinct values
    let tol = 1e-7 * scale;
    let mut distinct: Vec<f64> = Vec::new();
    let mut run: Vec<f64> = Vec::new();
    for &e in &reals {
        if let Some(&last) = run.last() {
            if (e - last).abs() > tol {
                distinct.push(run.iter().sum::<f64>() / run.len() as f64);
                run.clear();
            }
        }
        run.push(e);
    }
    if !run.is_empty() {
        distinct.push(run.iter().sum::<f64>() / run.len() as f64);
    }
    let tau = distinct[0];
    Ok(SpectrumReport { eigenvalues: distinct, d: matrix.d, tau })
}

/// The Delsarte-Hoffman coclique bound `n / (1 - d/tau)`.
pub fn hoffman(report: &SpectrumReport, n: u64) -> Result<f64, SpectraError> {
    if report.tau >= 0.0 || report.d <= 0.0 {
        return Err(SpectraError::DegenerateSpectrum { tau: report.tau, d: report.d });
    }
    Ok(n as f64 / (1.0 - report.d / report.tau))
}

/// Convenience: unit-weight Hoffman bound of an action.
pub fn unit_hoffman(profile: &ActionProfile) -> Result<f64, SpectraError> {
    let w = ClassWeighting::unit(profile);
    let m = collapse(profile, &w)?;
    let rep = eigenvalues(&m)?;
    hoffman(&rep, profile.action().group().order() as u64)
}

/// One linear functional `w -> lambda(w)` of the simultaneous eigenbasis:
/// coefficients per derangement-class pair.
#[derive(Debug, Clone)]
struct Functional {
    coeffs: Vec<f64>,
}

/// Minimizes the Hoffman bound over compatible weightings, normalized to
/// total weight `d = 1`.
///
/// The collapsed matrices of all weightings commute, so the eigenvalue of
/// each irreducible constituent is linear in the weights. The LP minimizes
/// `t` subject to every eigenvalue functional staying above `-t`; functionals
/// are harvested from eigendecompositions and violated spectra are added as
/// cuts until the optimum's true least eigenvalue matches `-t`.
pub fn optimize_weights(
    profile: &ActionProfile,
) -> Result<(ClassWeighting, f64), SpectraError> {
    let table = profile.action().group();
    let k = table.n_classes();
    let n = table.order() as u64;

    // derangement classes as inverse-closed pairs
    let mut pair_of_class: Vec<Option<usize>> = vec![None; k];
    let mut pairs: Vec<Vec<u32>> = Vec::new();
    for c in 0..k as u32 {
        if profile.is_fixing_class(c) || pair_of_class[c as usize].is_some() {
            continue;
        }
        let ic = table.inverse_class_of(c);
        let id = pairs.len();
        pair_of_class[c as usize] = Some(id);
        pair_of_class[ic as usize] = Some(id);
        if ic != c {
            pairs.push(vec![c, ic]);
        } else {
            pairs.push(vec![c]);
        }
    }
    if pairs.is_empty() {
        return Err(SpectraError::Unbounded);
    }
    let np = pairs.len();
    let sizes: Vec<f64> = pairs
        .iter()
        .map(|p| p.iter().map(|&c| table.class_size(c) as f64).sum())
        .collect();

    let weighting_of = |w: &[f64]| -> ClassWeighting {
        let mut full = vec![0.0f64; k];
        for (pid, p) in pairs.iter().enumerate() {
            for &c in p {
                full[c as usize] = w[pid];
            }
        }
        ClassWeighting { weights: full }
    };

    // pair basis matrices
    let tensor = table.class_tensor();
    let pair_matrix: Vec<DMatrix<f64>> = pairs
        .iter()
        .map(|p| {
            let mut m = DMatrix::zeros(k, k);
            for &c in p {
                for j in 0..k {
                    for i in 0..k {
                        m[(j, i)] += tensor.count(c as usize, j, i) as f64;
                    }
                }
            }
            m
        })
        .collect();

    let mut functionals: Vec<Functional> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    // harvest functionals from a generic weighting: its eigenvectors
    // simultaneously diagonalize every pair matrix
    let mut harvest = |w: &[f64], functionals: &mut Vec<Functional>| -> Result<(), SpectraError> {
        let weighting = weighting_of(w);
        let cm = collapse(profile, &weighting)?;
        let m = DMatrix::from_row_slice(k, k, &cm.entries);
        let rep = eigenvalues(&cm)?;
        for &lam in &rep.eigenvalues {
            let shifted = &m - DMatrix::identity(k, k) * lam;
            let svd = shifted.clone().svd(true, true);
            let (mut min_i, mut min_s) = (0usize, f64::INFINITY);
            for (i, &s) in svd.singular_values.iter().enumerate() {
                if s < min_s {
                    min_s = s;
                    min_i = i;
                }
            }
            let v_t = svd.v_t.as_ref().expect("svd with v requested");
            let v = v_t.row(min_i).transpose();
            let svd_l = shifted.transpose().svd(true, true);
            let (mut min_li, mut min_ls) = (0usize, f64::INFINITY);
            for (i, &s) in svd_l.singular_values.iter().enumerate() {
                if s < min_ls {
                    min_ls = s;
                    min_li = i;
                }
            }
            let u = svd_l.v_t.as_ref().unwrap().row(min_li).transpose();
            let uv = u.dot(&v);
            if uv.abs() < 1e-8 {
                continue; // defective numerically; cuts will recover
            }
            let coeffs: Vec<f64> = pair_matrix
                .iter()
                .map(|mp| u.dot(&(mp * &v)) / uv)
                .collect();
            // drop the trivial functional: its eigenvector is constant
            let vmax = v.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
            let spread = v.iter().fold(0.0f64, |a: f64, &x| a.max((x - v[0]).abs()));
            if spread <= 1e-6 * vmax {
                continue;
            }
            // dedupe
            let dup = functionals.iter().any(|f| {
                f.coeffs
                    .iter()
                    .zip(&coeffs)
                    .all(|(a, b)| (a - b).abs() <= 1e-6 * a.abs().max(b.abs()).max(1.0))
            });
            if !dup {
                functionals.push(Functional { coeffs });
            }
        }
        Ok(())
    };

    let generic: Vec<f64> = (0..np).map(|_| rng.gen_range(0.5..1.5)).collect();
    harvest(&generic, &mut functionals)?;
    harvest(&vec![1.0; np], &mut functionals)?;

    const MAX_ROUNDS: usize = 100;
    for _round in 0..MAX_ROUNDS {
        // vars: w+ (np), w- (np), t
        let nv = 2 * np + 1;
        let mut objective = vec![0.0f64; nv];
        objective[2 * np] = 1.0;
        let mut constraints = Vec::new();
        // normalization: sum sizes * w = 1
        let mut norm = vec![0.0f64; nv];
        for p in 0..np {
            norm[p] = sizes[p];
            norm[np + p] = -sizes[p];
        }
        constraints.push(Constraint { coeffs: norm, cmp: Cmp::Eq, rhs: 1.0 });
        for f in &functionals {
            let mut row = vec![0.0f64; nv];
            for p in 0..np {
                row[p] = f.coeffs[p];
                row[np + p] = -f.coeffs[p];
            }
            row[2 * np] = 1.0;
            constraints.push(Constraint { coeffs: row, cmp: Cmp::Ge, rhs: 0.0 });
        }
        let (x, t_opt) = solve_lp(&objective, &constraints)?;
        let w: Vec<f64> = (0..np).map(|p| x[p] - x[np + p]).collect();

        // true spectrum at the LP optimum
        let weighting = weighting_of(&w);
        let cm = collapse(profile, &weighting)?;
        let rep = eigenvalues(&cm)?;
        if rep.tau >= -(t_opt + 1e-8) {
            let bound = hoffman(&rep, n)?;
            return Ok((weighting, bound));
        }
        // violated: harvest cuts from this weighting and retry
        let before = functionals.len();
        harvest(&w, &mut functionals)?;
        if functionals.len() == before {
            // no new functional found: perturb to break degeneracy
            let jitter: Vec<f64> =
                w.iter().map(|wi| wi + rng.gen_range(-0.01..0.01)).collect();
            harvest(&jitter, &mut functionals)?;
            if functionals.len() == before {
                return Err(SpectraError::NoConvergence(MAX_ROUNDS));
            }
        }
    }
    Err(SpectraError::NoConvergence(MAX_ROUNDS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derangement::profile;
    use crate::perm::{coset_action, find_subgroup, GroupTable, Permutation, SubgroupShape};
    use std::sync::Arc;

    fn a5() -> Arc<GroupTable> {
        let a = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
        GroupTable::close_group(5, &[a, b]).unwrap()
    }

    #[test]
    fn z2_regular_collapse() {
        let g = Permutation::from_images(vec![1, 0]).unwrap();
        let t = GroupTable::close_group(2, &[g]).unwrap();
        let act = coset_action(t, &[0]).unwrap();
        let prof = profile(&act);
        let w = ClassWeighting::unit(&prof);
        let m = collapse(&prof, &w).unwrap();
        assert_eq!(m.entries(), &[0.0, 1.0, 1.0, 0.0]);
        let rep = eigenvalues(&m).unwrap();
        assert_eq!(rep.eigenvalues.len(), 2);
        assert!((rep.tau + 1.0).abs() < 1e-9);
        assert!((hoffman(&rep, 2).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_weighting_gives_zero_matrix() {
        let t = a5();
        let act = coset_action(t.clone(), &[0]).unwrap();
        let prof = profile(&act);
        let w = ClassWeighting::new(&prof, vec![0.0; t.n_classes()]).unwrap();
        let m = collapse(&prof, &w).unwrap();
        assert!(m.entries().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn a5_on_ten_points_spectrum_and_hoffman() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t, &h).unwrap();
        let prof = profile(&act);
        let w = ClassWeighting::unit(&prof);
        let m = collapse(&prof, &w).unwrap();
        let rep = eigenvalues(&m).unwrap();
        let mut eigs = rep.eigenvalues.clone();
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let expect = [-6.0, 0.0, 4.0, 24.0];
        assert_eq!(eigs.len(), 4);
        for (e, x) in eigs.iter().zip(expect.iter()) {
            assert!((e - x).abs() < 1e-6, "{} vs {}", e, x);
        }
        assert!((rep.d - 24.0).abs() < 1e-9);
        assert!((rep.tau + 6.0).abs() < 1e-6);
        assert!((hoffman(&rep, 60).unwrap() - 12.0).abs() < 1e-6);
    }

    #[test]
    fn collapsed_equals_dense_oracle_on_a5() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t, &h).unwrap();
        let prof = profile(&act);
        let w = ClassWeighting::unit(&prof);
        let collapsed = eigenvalues(&collapse(&prof, &w).unwrap()).unwrap();
        let dense = oracle::dense_spectrum(&prof, &w);
        assert_eq!(collapsed.eigenvalues.len(), dense.len());
        for (a, b) in collapsed.eigenvalues.iter().zip(dense.iter()) {
            assert!((a - b).abs() < 1e-6 * a.abs().max(1.0), "{} vs {}", a, b);
        }
    }

    #[test]
    fn scaling_invariance_of_hoffman() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t, &h).unwrap();
        let prof = profile(&act);
        let w = ClassWeighting::unit(&prof);
        let b1 = hoffman(&eigenvalues(&collapse(&prof, &w).unwrap()).unwrap(), 60).unwrap();
        let b2 =
            hoffman(&eigenvalues(&collapse(&prof, &w.scale(3.25)).unwrap()).unwrap(), 60).unwrap();
        assert!((b1 - b2).abs() < 1e-9 * b1.max(1.0));
    }

    #[test]
    fn incompatible_weightings_rejected() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t.clone(), &h).unwrap();
        let prof = profile(&act);
        // weight on the identity class
        let mut w = vec![0.0; t.n_classes()];
        w[0] = 1.0;
        assert!(ClassWeighting::new(&prof, w).is_err());
    }

    #[test]
    fn optimizer_on_a5_not_worse_than_unit() {
        let t = a5();
        let h = find_subgroup(&t, 6, &SubgroupShape::Dihedral).unwrap();
        let act = coset_action(t, &h).unwrap();
        let prof = profile(&act);
        let unit = unit_hoffman(&prof).unwrap();
        let (w, bound) = optimize_weights(&prof).unwrap();
        assert!(bound <= unit + 1e-6);
        // the optimum is a genuine valid bound: recompute from scratch
        let rep = eigenvalues(&collapse(&prof, &w).unwrap()).unwrap();
        let again = hoffman(&rep, 60).unwrap();
        assert!((bound - again).abs() < 1e-6 * bound.max(1.0));
        // the solver-verified maximum is 12; the bound can never dip below
        assert!(bound >= 12.0 - 1e-6);
    }
}
