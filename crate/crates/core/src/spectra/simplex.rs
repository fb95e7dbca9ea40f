//! A small dense two-phase simplex solver.
//!
//! Minimizes `c . x` subject to mixed <=, >=, = constraints with `x >= 0`.
//! Bland's rule throughout: deterministic and cycle-free. Problem sizes here
//! are a few hundred rows and columns, so a dense tableau is the right tool.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub cmp: Cmp,
    pub rhs: f64,
}

const EPS: f64 = 1e-10;

/// Returns the minimizing point and objective value.
pub fn solve_lp(objective: &[f64], constraints: &[Constraint]) -> Result<(Vec<f64>, f64), LpError> {
    let n = objective.len();
    let m = constraints.len();

    // Normalize rows to rhs >= 0, then add slack/surplus and artificial
    // variables. Column layout: structural | slack+surplus | artificial.
    let mut rows: Vec<(Vec<f64>, Cmp, f64)> = constraints
        .iter()
        .map(|c| {
            debug_assert_eq!(c.coeffs.len(), n);
            if c.rhs < 0.0 {
                let flipped = match c.cmp {
                    Cmp::Le => Cmp::Ge,
                    Cmp::Ge => Cmp::Le,
                    Cmp::Eq => Cmp::Eq,
                };
                (c.coeffs.iter().map(|&x| -x).collect(), flipped, -c.rhs)
            } else {
                (c.coeffs.clone(), c.cmp, c.rhs)
            }
        })
        .collect();

    let n_slack = rows.iter().filter(|r| r.1 != Cmp::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Cmp::Le).count();
    let total = n + n_slack + n_art;
    let width = total + 1; // + rhs

    let mut tab = vec![0.0f64; m * width];
    let mut basis = vec![usize::MAX; m];
    let mut slack_at = n;
    let mut art_at = n + n_slack;
    let mut art_cols = Vec::new();

    for (r, (coeffs, cmp, rhs)) in rows.drain(..).enumerate() {
        for (j, &v) in coeffs.iter().enumerate() {
            tab[r * width + j] = v;
        }
        tab[r * width + total] = rhs;
        match cmp {
            Cmp::Le => {
                tab[r * width + slack_at] = 1.0;
                basis[r] = slack_at;
                slack_at += 1;
            }
            Cmp::Ge => {
                tab[r * width + slack_at] = -1.0;
                slack_at += 1;
                tab[r * width + art_at] = 1.0;
                basis[r] = art_at;
                art_cols.push(art_at);
                art_at += 1;
            }
            Cmp::Eq => {
                tab[r * width + art_at] = 1.0;
                basis[r] = art_at;
                art_cols.push(art_at);
                art_at += 1;
            }
        }
    }

    // Phase 1: minimize the sum of artificials.
    if !art_cols.is_empty() {
        let mut phase1 = vec![0.0f64; total];
        for &c in &art_cols {
            phase1[c] = 1.0;
        }
        let value = run_simplex(&mut tab, &mut basis, m, total, width, &phase1)?;
        if value > 1e-7 {
            return Err(LpError::Infeasible);
        }
        // pivot remaining artificials out of the basis where possible
        for r in 0..m {
            if art_cols.contains(&basis[r]) {
                let pivot_col = (0..n + n_slack)
                    .find(|&j| tab[r * width + j].abs() > EPS);
                if let Some(j) = pivot_col {
                    pivot(&mut tab, &mut basis, m, width, r, j);
                }
            }
        }
        // freeze artificial columns at zero
        for &c in &art_cols {
            for r in 0..m {
                tab[r * width + c] = 0.0;
            }
        }
    }

    // Phase 2.
    let mut phase2 = vec![0.0f64; total];
    phase2[..n].copy_from_slice(objective);
    run_simplex(&mut tab, &mut basis, m, total, width, &phase2)?;

    let mut x = vec![0.0f64; n];
    for r in 0..m {
        if basis[r] < n {
            x[basis[r]] = tab[r * width + total];
        }
    }
    let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok((x, value))
}

fn pivot(tab: &mut [f64], basis: &mut [usize], m: usize, width: usize, r: usize, c: usize) {
    let p = tab[r * width + c];
    for j in 0..width {
        tab[r * width + j] /= p;
    }
    for i in 0..m {
        if i == r {
            continue;
        }
        let f = tab[i * width + c];
        if f.abs() <= EPS {
            continue;
        }
        for j in 0..width {
            tab[i * width + j] -= f * tab[r * width + j];
        }
    }
    basis[r] = c;
}

/// Runs simplex iterations on the tableau, minimizing `cost`; returns the
/// objective value at the optimum.
fn run_simplex(
    tab: &mut [f64],
    basis: &mut [usize],
    m: usize,
    total: usize,
    width: usize,
    cost: &[f64],
) -> Result<f64, LpError> {
    loop {
        // reduced costs: c_j - c_B . B^{-1} A_j
        let mut entering = None;
        for j in 0..total {
            let mut red = cost[j];
            for r in 0..m {
                red -= cost[basis[r]] * tab[r * width + j];
            }
            if red < -1e-9 {
                entering = Some(j); // Bland: first improving column
                break;
            }
        }
        let Some(j) = entering else {
            let mut value = 0.0;
            for r in 0..m {
                value += cost[basis[r]] * tab[r * width + total];
            }
            return Ok(value);
        };
        // ratio test, Bland tie-break on basis index
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..m {
            let a = tab[r * width + j];
            if a > EPS {
                let ratio = tab[r * width + total] / a;
                match leave {
                    None => leave = Some((r, ratio)),
                    Some((br, bratio)) => {
                        if ratio < bratio - EPS
                            || (ratio < bratio + EPS && basis[r] < basis[br])
                        {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
        }
        let Some((r, _)) = leave else {
            return Err(LpError::Unbounded);
        };
        pivot(tab, basis, m, width, r, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_minimization() {
        // min -x - y st x + y <= 4, x <= 2, y <= 3  => x=2, y=2? no: min -x-y
        // maximizes x+y: best (2, 2)? x+y<=4 binds with x=2 -> y=2, obj -4.
        let (x, v) = solve_lp(
            &[-1.0, -1.0],
            &[
                Constraint { coeffs: vec![1.0, 1.0], cmp: Cmp::Le, rhs: 4.0 },
                Constraint { coeffs: vec![1.0, 0.0], cmp: Cmp::Le, rhs: 2.0 },
                Constraint { coeffs: vec![0.0, 1.0], cmp: Cmp::Le, rhs: 3.0 },
            ],
        )
        .unwrap();
        assert!((v + 4.0).abs() < 1e-9);
        assert!((x[0] + x[1] - 4.0).abs() < 1e-9);
    }

    #[test]
    fn equality_and_ge() {
        // min t st w = 1 (normalization), -3w + t >= 0  => t = 3
        let (x, v) = solve_lp(
            &[0.0, 1.0],
            &[
                Constraint { coeffs: vec![1.0, 0.0], cmp: Cmp::Eq, rhs: 1.0 },
                Constraint { coeffs: vec![-3.0, 1.0], cmp: Cmp::Ge, rhs: 0.0 },
            ],
        )
        .unwrap();
        assert!((x[0] - 1.0).abs() < 1e-9);
        assert!((v - 3.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_detected() {
        let r = solve_lp(
            &[1.0],
            &[
                Constraint { coeffs: vec![1.0], cmp: Cmp::Le, rhs: 1.0 },
                Constraint { coeffs: vec![1.0], cmp: Cmp::Ge, rhs: 2.0 },
            ],
        );
        assert_eq!(r.unwrap_err(), LpError::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let r = solve_lp(
            &[-1.0],
            &[Constraint { coeffs: vec![-1.0], cmp: Cmp::Le, rhs: 0.0 }],
        );
        assert_eq!(r.unwrap_err(), LpError::Unbounded);
    }
}
