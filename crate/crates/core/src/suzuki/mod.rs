//! Closed-form structure of the Suzuki groups `Sz(q)`, `q = 2^e` with `e`
//! odd: class inventory, character table, class-sum values, per-stabilizer
//! spectra with their Hoffman bounds, the Borel subgroup as an explicit
//! enumerated group, and the ovoid permutation representation used to
//! generate the `sz8.grp` fixture.

mod borel;
mod ovoid;

pub use borel::{sz_borel_group, BorelGroup};
pub use ovoid::sz_ovoid_generators;

use num_complex::Complex64;
use thiserror::Error;

use crate::derangement::ActionProfile;
use crate::perm::GroupTable;
use crate::spectra::{ClassWeighting, SpectraError};

#[derive(Debug, Error)]
pub enum SuzukiError {
    #[error("exponent must be odd and at least 3, got {0}")]
    BadExponent(u32),
    #[error("{party} = {t} does not divide |A_{m}| = {order}")]
    NotADivisor { party: &'static str, t: u64, m: usize, order: u64 },
    #[error("inadmissible parameters: {0}")]
    InadmissibleParameters(String),
    #[error("group does not match Sz({q}): {reason}")]
    WrongGroup { q: u64, reason: String },
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Perm(#[from] crate::perm::PermError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// Numeric shell of `Sz(q)`: `q = 2^e`, `r = 2^((e+1)/2)`, so `r^2 = 2q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SzParameters {
    pub e: u32,
    pub q: u64,
    pub r: u64,
}

/// Conjugacy-class families of `Sz(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SzClassKind {
    Identity,
    /// The involution class (squares of the order-4 elements).
    Involution,
    /// The two order-4 classes, inverse to each other.
    OrderFour,
    /// Classes inside the cyclic Hall subgroup of order `q - 1`.
    TorusA0,
    /// Classes inside the cyclic Hall subgroup of order `q + r + 1`.
    TorusA1,
    /// Classes inside the cyclic Hall subgroup of order `q - r + 1`.
    TorusA2,
}

#[derive(Debug, Clone, Copy)]
pub struct SzClassFamily {
    pub kind: SzClassKind,
    pub count: u64,
    pub size: u64,
}

impl SzParameters {
    pub fn new(e: u32) -> Result<Self, SuzukiError> {
        if e < 3 || e % 2 == 0 {
            return Err(SuzukiError::BadExponent(e));
        }
        let q = 1u64 << e;
        let r = 1u64 << ((e + 1) / 2);
        Ok(SzParameters { e, q, r })
    }

    pub fn group_order(&self) -> u64 {
        let q = self.q;
        q * q * (q - 1) * (q * q + 1)
    }

    /// Orders of the three cyclic Hall subgroups `A_0, A_1, A_2`.
    pub fn torus_orders(&self) -> [u64; 3] {
        [self.q - 1, self.q + self.r + 1, self.q - self.r + 1]
    }

    pub fn class_families(&self) -> Vec<SzClassFamily> {
        let (q, r) = (self.q, self.r);
        vec![
            SzClassFamily { kind: SzClassKind::Identity, count: 1, size: 1 },
            SzClassFamily {
                kind: SzClassKind::Involution,
                count: 1,
                size: (q - 1) * (q * q + 1),
            },
            SzClassFamily {
                kind: SzClassKind::OrderFour,
                count: 2,
                size: q * (q - 1) * (q * q + 1) / 2,
            },
            SzClassFamily {
                kind: SzClassKind::TorusA0,
                count: (q - 2) / 2,
                size: q * q * (q * q + 1),
            },
            SzClassFamily {
                kind: SzClassKind::TorusA1,
                count: (q + r) / 4,
                size: q * q * (q - 1) * (q - r + 1),
            },
            SzClassFamily {
                kind: SzClassKind::TorusA2,
                count: (q - r) / 4,
                size: q * q * (q - 1) * (q + r + 1),
            },
        ]
    }

    pub fn n_classes(&self) -> u64 {
        self.class_families().iter().map(|f| f.count).sum()
    }

    /// Character degrees with multiplicities.
    pub fn character_degrees(&self) -> Vec<(u64, u64)> {
        let (q, r) = (self.q, self.r);
        vec![
            (1, 1),
            (q * q, 1),
            (q * q + 1, q / 2 - 1),
            ((q - r + 1) * (q - 1), (q + r) / 4),
            ((q + r + 1) * (q - 1), (q - r) / 4),
            (r * (q - 1) / 2, 2),
        ]
    }
}

/// Where an element order lands in the class inventory.
pub fn classify_order(params: &SzParameters, order: u64) -> Result<SzClassKind, SuzukiError> {
    let [n0, n1, n2] = params.torus_orders();
    match order {
        1 => Ok(SzClassKind::Identity),
        2 => Ok(SzClassKind::Involution),
        4 => Ok(SzClassKind::OrderFour),
        o if n0 % o == 0 => Ok(SzClassKind::TorusA0),
        o if n1 % o == 0 => Ok(SzClassKind::TorusA1),
        o if n2 % o == 0 => Ok(SzClassKind::TorusA2),
        o => Err(SuzukiError::WrongGroup {
            q: params.q,
            reason: format!("element order {} fits no class family", o),
        }),
    }
}

/// Asserts that an enumerated group has the order, class count, class-size
/// multiset, and involution count of `Sz(q)`. Run on every ingested fixture
/// before it is trusted.
pub fn verify_sz_table(table: &GroupTable, e: u32) -> Result<SzParameters, SuzukiError> {
    let params = SzParameters::new(e)?;
    if table.order() as u64 != params.group_order() {
        return Err(SuzukiError::WrongGroup {
            q: params.q,
            reason: format!("order {} != {}", table.order(), params.group_order()),
        });
    }
    if table.n_classes() as u64 != params.n_classes() {
        return Err(SuzukiError::WrongGroup {
            q: params.q,
            reason: format!("{} classes != {}", table.n_classes(), params.n_classes()),
        });
    }
    let mut expected: Vec<u64> = Vec::new();
    for fam in params.class_families() {
        for _ in 0..fam.count {
            expected.push(fam.size);
        }
    }
    expected.sort_unstable();
    let mut actual: Vec<u64> = (0..table.n_classes() as u32).map(|c| table.class_size(c)).collect();
    actual.sort_unstable();
    if expected != actual {
        return Err(SuzukiError::WrongGroup {
            q: params.q,
            reason: format!("class sizes {:?} != {:?}", actual, expected),
        });
    }
    let involutions: u64 = (0..table.n_classes() as u32)
        .filter(|&c| table.element_order(table.class_rep(c)) == 2)
        .map(|c| table.class_size(c))
        .sum();
    if involutions != (params.q - 1) * (params.q * params.q + 1) {
        return Err(SuzukiError::WrongGroup {
            q: params.q,
            reason: format!("involution count {}", involutions),
        });
    }
    // every element order must fit the inventory
    for c in 0..table.n_classes() as u32 {
        classify_order(&params, table.element_order(table.class_rep(c)) as u64)?;
    }
    Ok(params)
}

// ---------------------------------------------------------------------------
// Character table
// ---------------------------------------------------------------------------

/// Symbolic character-table rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SzChar {
    Principal,
    /// The degree `q^2` constituent of the 2-transitive permutation
    /// character.
    Steinberg,
    /// Degree `q^2 + 1`, indexed by `1 <= i <= q/2 - 1`.
    TorusA0Series(u64),
    /// Degree `(q - r + 1)(q - 1)`, indexed by `1 <= j <= (q + r)/4`.
    TorusA1Series(u64),
    /// Degree `(q + r + 1)(q - 1)`, indexed by `1 <= k <= (q - r)/4`.
    TorusA2Series(u64),
    /// The two degree `r(q-1)/2` characters.
    HalfSpin(u8),
}

/// Column labels: class of the identity, the involutions, the two order-4
/// classes, or a torus class given by the exponent of its distinguished
/// generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SzClassLabel {
    Identity,
    Involution,
    OrderFour { inverse: bool },
    Torus { m: usize, s: u64 },
}

/// Complex character values of `Sz(q)` for explicit evaluation (the epsilon
/// sums need roots of unity, so values are numeric).
pub struct SzCharacterTable {
    pub params: SzParameters,
}

impl SzCharacterTable {
    pub fn new(params: SzParameters) -> Self {
        SzCharacterTable { params }
    }

    pub fn characters(&self) -> Vec<SzChar> {
        let (q, r) = (self.params.q, self.params.r);
        let mut out = vec![SzChar::Principal, SzChar::Steinberg];
        out.extend((1..=q / 2 - 1).map(SzChar::TorusA0Series));
        out.extend((1..=(q + r) / 4).map(SzChar::TorusA1Series));
        out.extend((1..=(q - r) / 4).map(SzChar::TorusA2Series));
        out.push(SzChar::HalfSpin(1));
        out.push(SzChar::HalfSpin(2));
        out
    }

    /// Class labels with sizes, one per conjugacy class. Torus classes are
    /// the orbits of generator exponents under inversion (and the fourth-
    /// power Frobenius twist for `A_1, A_2`).
    pub fn classes(&self) -> Vec<(SzClassLabel, u64)> {
        let params = &self.params;
        let (q, _r) = (params.q, params.r);
        let fam = params.class_families();
        let mut out = vec![
            (SzClassLabel::Identity, 1),
            (SzClassLabel::Involution, fam[1].size),
            (SzClassLabel::OrderFour { inverse: false }, fam[2].size),
            (SzClassLabel::OrderFour { inverse: true }, fam[2].size),
        ];
        let orders = params.torus_orders();
        for (m, fam) in [(0usize, fam[3]), (1, fam[4]), (2, fam[5])] {
            let n = orders[m];
            let reps = torus_orbit_reps(n, q, m != 0);
            debug_assert_eq!(reps.len() as u64, fam.count);
            for s in reps {
                out.push((SzClassLabel::Torus { m, s }, fam.size));
            }
        }
        out
    }

    /// Centralizer order of a class, `|G| / |class|`.
    pub fn centralizer_order(&self, size: u64) -> u64 {
        self.params.group_order() / size
    }

    pub fn value(&self, chi: SzChar, class: SzClassLabel) -> Complex64 {
        let (q, r) = (self.params.q as f64, self.params.r as f64);
        let orders = self.params.torus_orders();
        let eps0 = |i: u64, s: u64| {
            let n = orders[0];
            root_sum(n, &[(i * s) % n, (n - (i * s) % n) % n])
        };
        let eps12 = |m: usize, i: u64, s: u64| {
            let n = orders[m];
            let qq = self.params.q % n;
            let a = (i * s) % n;
            let b = (i * s % n) * qq % n;
            root_sum(n, &[a, b, (n - a) % n, (n - b) % n])
        };
        match (chi, class) {
            (SzChar::Principal, _) => Complex64::new(1.0, 0.0),

            (SzChar::Steinberg, SzClassLabel::Identity) => Complex64::new(q * q, 0.0),
            (SzChar::Steinberg, SzClassLabel::Involution) => Complex64::new(0.0, 0.0),
            (SzChar::Steinberg, SzClassLabel::OrderFour { .. }) => Complex64::new(0.0, 0.0),
            (SzChar::Steinberg, SzClassLabel::Torus { m: 0, .. }) => Complex64::new(1.0, 0.0),
            (SzChar::Steinberg, SzClassLabel::Torus { .. }) => Complex64::new(-1.0, 0.0),

            (SzChar::TorusA0Series(_), SzClassLabel::Identity) => Complex64::new(q * q + 1.0, 0.0),
            (SzChar::TorusA0Series(_), SzClassLabel::Involution) => Complex64::new(1.0, 0.0),
            (SzChar::TorusA0Series(_), SzClassLabel::OrderFour { .. }) => Complex64::new(1.0, 0.0),
            (SzChar::TorusA0Series(i), SzClassLabel::Torus { m: 0, s }) => eps0(i, s),
            (SzChar::TorusA0Series(_), SzClassLabel::Torus { .. }) => Complex64::new(0.0, 0.0),

            (SzChar::TorusA1Series(_), SzClassLabel::Identity) => {
                Complex64::new((q - r + 1.0) * (q - 1.0), 0.0)
            }
            (SzChar::TorusA1Series(_), SzClassLabel::Involution) => Complex64::new(r - 1.0, 0.0),
            (SzChar::TorusA1Series(_), SzClassLabel::OrderFour { .. }) => Complex64::new(-1.0, 0.0),
            (SzChar::TorusA1Series(j), SzClassLabel::Torus { m: 1, s }) => -eps12(1, j, s),
            (SzChar::TorusA1Series(_), SzClassLabel::Torus { .. }) => Complex64::new(0.0, 0.0),

            (SzChar::TorusA2Series(_), SzClassLabel::Identity) => {
                Complex64::new((q + r + 1.0) * (q - 1.0), 0.0)
            }
            (SzChar::TorusA2Series(_), SzClassLabel::Involution) => Complex64::new(-r - 1.0, 0.0),
            (SzChar::TorusA2Series(_), SzClassLabel::OrderFour { .. }) => Complex64::new(-1.0, 0.0),
            (SzChar::TorusA2Series(k), SzClassLabel::Torus { m: 2, s }) => -eps12(2, k, s),
            (SzChar::TorusA2Series(_), SzClassLabel::Torus { .. }) => Complex64::new(0.0, 0.0),

            (SzChar::HalfSpin(_), SzClassLabel::Identity) => {
                Complex64::new(r * (q - 1.0) / 2.0, 0.0)
            }
            (SzChar::HalfSpin(_), SzClassLabel::Involution) => Complex64::new(-r / 2.0, 0.0),
            (SzChar::HalfSpin(l), SzClassLabel::OrderFour { inverse }) => {
                let sign = if (l == 1) ^ inverse { 1.0 } else { -1.0 };
                Complex64::new(0.0, sign * r / 2.0)
            }
            (SzChar::HalfSpin(_), SzClassLabel::Torus { m: 0, .. }) => Complex64::new(0.0, 0.0),
            (SzChar::HalfSpin(_), SzClassLabel::Torus { m: 1, .. }) => Complex64::new(1.0, 0.0),
            (SzChar::HalfSpin(_), SzClassLabel::Torus { .. }) => Complex64::new(-1.0, 0.0),
        }
    }
}

/// Orbit representatives of nonzero exponents mod `n` under negation, and
/// additionally under multiplication by `q` when `twist` is set.
fn torus_orbit_reps(n: u64, q: u64, twist: bool) -> Vec<u64> {
    let mut seen = vec![false; n as usize];
    let mut reps = Vec::new();
    for s in 1..n {
        if seen[s as usize] {
            continue;
        }
        reps.push(s);
        let mut orbit = vec![s];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            i += 1;
            let mut next = vec![(n - x) % n];
            if twist {
                next.push(x * (q % n) % n);
            }
            for y in next {
                if y != 0 && !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
        }
    }
    reps
}

fn root_sum(n: u64, exponents: &[u64]) -> Complex64 {
    let base = 2.0 * std::f64::consts::PI / n as f64;
    exponents
        .iter()
        .map(|&k| Complex64::from_polar(1.0, base * k as f64))
        .sum()
}

/// Character-table self-checks at a given `q`.
#[derive(Debug)]
pub struct CharCheckReport {
    pub q: u64,
    pub n_characters: usize,
    pub n_classes: usize,
    pub sum_degree_squares: u128,
    pub group_order: u128,
    pub max_orthogonality_error: f64,
}

pub fn sz_character_checks(e: u32) -> Result<CharCheckReport, SuzukiError> {
    let params = SzParameters::new(e)?;
    let table = SzCharacterTable::new(params);
    let chars = table.characters();
    let classes = table.classes();

    let sum_sq: u128 = params
        .character_degrees()
        .iter()
        .map(|&(d, mult)| (d as u128) * (d as u128) * mult as u128)
        .sum();

    // column orthogonality: sum over characters of chi(x) conj(chi(y))
    let values: Vec<Vec<Complex64>> = chars
        .iter()
        .map(|&chi| classes.iter().map(|&(cl, _)| table.value(chi, cl)).collect())
        .collect();
    let mut max_err = 0.0f64;
    for (x, &(_, size_x)) in classes.iter().enumerate() {
        for y in x..classes.len() {
            let mut acc = Complex64::new(0.0, 0.0);
            for row in &values {
                acc += row[x] * row[y].conj();
            }
            let expected = if x == y {
                table.centralizer_order(size_x) as f64
            } else {
                0.0
            };
            let err = (acc - Complex64::new(expected, 0.0)).norm();
            max_err = max_err.max(err);
        }
    }

    Ok(CharCheckReport {
        q: params.q,
        n_characters: chars.len(),
        n_classes: classes.len(),
        sum_degree_squares: sum_sq,
        group_order: params.group_order() as u128,
        max_orthogonality_error: max_err,
    })
}

// ---------------------------------------------------------------------------
// Class sums over the torus complements
// ---------------------------------------------------------------------------

/// The split class-sum values over `(A_m \ B_m)^G` for `B_m` of order `t`.
#[derive(Debug, Clone, Copy)]
pub struct ClassSumRecord {
    pub m: usize,
    pub t: u64,
    /// Number of elements in `(A_m \ B_m)^G`.
    pub stripped_size: u64,
    /// Series-character sum when the character index is divisible by `t`.
    pub sum_when_divisible: i64,
    /// Series-character sum otherwise (always zero).
    pub sum_otherwise: i64,
}

pub fn sz_class_sums(params: &SzParameters, m: usize, t: u64) -> Result<ClassSumRecord, SuzukiError> {
    let orders = params.torus_orders();
    assert!(m < 3);
    let n = orders[m];
    if t == 0 || n % t != 0 {
        return Err(SuzukiError::NotADivisor { party: "t", t, m, order: n });
    }
    let (q, r) = (params.q as i64, params.r as i64);
    let ti = t as i64;
    let (stripped_size, sum_when_divisible) = match m {
        0 => (
            (q * q * (q * q + 1) * (q - 1 - ti) / 2) as u64,
            -q * q * (q * q + 1) * ti,
        ),
        1 => (
            (q * q * (q - 1) * (q - r + 1) * (q + r + 1 - ti) / 4) as u64,
            ti * q * q * (q - 1) * (q - r + 1),
        ),
        _ => (
            (q * q * (q - 1) * (q + r + 1) * (q - r + 1 - ti) / 4) as u64,
            ti * q * q * (q - 1) * (q + r + 1),
        ),
    };
    Ok(ClassSumRecord { m, t, stripped_size, sum_when_divisible, sum_otherwise: 0 })
}

// ---------------------------------------------------------------------------
// Per-stabilizer case spectra
// ---------------------------------------------------------------------------

/// The transitive-action cases, keyed by the shape of the point stabilizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SzCase {
    /// `G_w` dihedral of order `2 t0` with `1 < t0 < q - 1` (unit weights).
    DihedralMid { t0: u64 },
    /// `G_w` dihedral of order `2(q-1)` (tuned three-part weights).
    DihedralFull,
    /// `G_w` cyclic of order `t0` with `1 < t0 < q - 1` (unit weights).
    CyclicMid { t0: u64 },
    /// `G_w` cyclic of order `q - 1`.
    CyclicFull,
    /// `G_w` inside a Borel subgroup, contains order-4 elements, Hall
    /// 2'-part of order `t0 > 1` (unit weights off the 2-classes).
    BorelHall { t0: u64 },
    /// `G_w` a 2-group of exponent 4.
    BorelTwoGroup,
    /// `G_w = Sz(q1)` with `q = q1^k`, `q1 > 2`.
    SubfieldQ1 { q1: u64 },
    /// `G_w` inside the order `4(q+r+1)` torus normalizer.
    TorusPlus,
    /// `G_w` inside the order `4(q-r+1)` torus normalizer.
    TorusMinus,
}

/// Weights per class family (zero means the family is outside the support),
/// together with the `B_m` orders carving fixing parts out of the tori.
#[derive(Debug, Clone, Copy)]
pub struct SzCaseWeights {
    pub involution: f64,
    pub order_four: f64,
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub t0: u64,
    pub t1: u64,
    pub t2: u64,
}

/// Closed-form spectrum, row sum, least eigenvalue, and Hoffman bound of the
/// weighted class matrix for one case.
#[derive(Debug, Clone)]
pub struct SzCaseSpectrum {
    pub case: SzCase,
    pub params: SzParameters,
    /// Distinct eigenvalues, ascending.
    pub spectrum: Vec<f64>,
    pub d: f64,
    pub tau: f64,
    pub bound: f64,
    pub weights: SzCaseWeights,
    /// Smallest stabilizer order the case's conclusion is stated for.
    pub stabilizer_floor: f64,
    /// `bound / sqrt(|G| * stabilizer_floor)`, an upper bound on
    /// `rho(G/Omega)` for the case.
    pub rho_upper: f64,
}

impl SzCaseSpectrum {
    /// The target inequality `rho(G/Omega) < sqrt(2)/2`.
    pub fn conjecture_satisfied(&self) -> bool {
        self.rho_upper < std::f64::consts::FRAC_1_SQRT_2
    }
}

pub fn sz_case_spectrum(case: SzCase, e: u32) -> Result<SzCaseSpectrum, SuzukiError> {
    let params = SzParameters::new(e)?;
    let (q, r) = (params.q as f64, params.r as f64);
    let qa = params.q;
    let [n0, _, _] = params.torus_orders();

    let check_mid_t0 = |t0: u64| -> Result<(), SuzukiError> {
        if t0 <= 1 || t0 >= n0 || n0 % t0 != 0 {
            return Err(SuzukiError::InadmissibleParameters(format!(
                "t0 = {} must be a proper divisor of q - 1 = {} exceeding 1",
                t0, n0
            )));
        }
        Ok(())
    };

    // spectrum entries: (value, populated)
    let (weights, raw, stab_floor): (SzCaseWeights, Vec<(f64, bool)>, f64) = match case {
        SzCase::DihedralMid { t0 } => {
            check_mid_t0(t0)?;
            let t = t0 as f64;
            let w = SzCaseWeights {
                involution: 0.0,
                order_four: 1.0,
                a0: 1.0,
                a1: 1.0,
                a2: 1.0,
                t0,
                t1: 1,
                t2: 1,
            };
            let lam = vec![
                (q.powi(5) - q.powi(4) * t / 2.0 - q.powi(4) / 2.0 - q * q * t / 2.0
                    + q * q / 2.0
                    - q, true),
                (-q * q * t / 2.0 + q * q / 2.0 - t / 2.0 - 0.5, true),
                (q * q - q, t0 >= 2),
                (-q * q * t + q * q - q, t0 <= qa / 2 - 1),
                (-q * r - q, true),
                (q * r - q, true),
                (q * q, true),
            ];
            (w, lam, 2.0 * t)
        }
        SzCase::DihedralFull => {
            let w = SzCaseWeights {
                involution: 0.0,
                order_four: 1.0,
                a0: 0.0,
                a1: 2.0 / r + 2.0 / q,
                a2: -2.0 / r + 2.0 / q,
                t0: n0,
                t1: 1,
                t2: 1,
            };
            let lam = vec![
                (2.0 * q.powi(4) - 2.0 * q.powi(3) + q * q - q, true),
                (-q * q + q, true),
                (q * q - q, true),
                (q.powi(3) - q * q + 2.0 * q, true),
            ];
            (w, lam, 2.0 * (q - 1.0))
        }
        SzCase::CyclicMid { t0 } => {
            check_mid_t0(t0)?;
            let t = t0 as f64;
            let w = SzCaseWeights {
                involution: 1.0,
                order_four: 1.0,
                a0: 1.0,
                a1: 1.0,
                a2: 1.0,
                t0,
                t1: 1,
                t2: 1,
            };
            let lam = vec![
                (q.powi(5) - q.powi(4) * t / 2.0 - q.powi(4) / 2.0 + q.powi(3)
                    - q * q * t / 2.0
                    - q * q / 2.0
                    - 1.0, true),
                (-q * q * t / 2.0 + q * q / 2.0 - t / 2.0 - 0.5, true),
                (q * q - 1.0, t0 >= 2),
                (-q * q * t + q * q - 1.0, t0 <= qa / 2 - 1),
                (-1.0, true),
            ];
            (w, lam, t)
        }
        SzCase::CyclicFull => {
            let w = SzCaseWeights {
                involution: 1.0,
                order_four: 1.0,
                a0: 0.0,
                a1: 2.0 / q,
                a2: 2.0 / q,
                t0: n0,
                t1: 1,
                t2: 1,
            };
            let lam = vec![
                (2.0 * q.powi(4) - 2.0 * q.powi(3) + q * q - 1.0, true),
                (q * q - 1.0, true),
                (-(q - 1.0) * (q - 1.0), true),
            ];
            (w, lam, q - 1.0)
        }
        SzCase::BorelHall { t0 } => {
            if t0 <= 1 || n0 % t0 != 0 {
                return Err(SuzukiError::InadmissibleParameters(format!(
                    "t0 = {} must divide q - 1 = {} and exceed 1",
                    t0, n0
                )));
            }
            let t = t0 as f64;
            let w = SzCaseWeights {
                involution: 0.0,
                order_four: 0.0,
                a0: 1.0,
                a1: 1.0,
                a2: 1.0,
                t0,
                t1: 1,
                t2: 1,
            };
            let lam = vec![
                (q.powi(5) - q.powi(4) * t / 2.0 - 1.5 * q.powi(4) + q.powi(3)
                    - q * q * t / 2.0
                    - q * q / 2.0, true),
                (-q * q * t / 2.0 + q * q / 2.0 - t / 2.0 - 0.5, true),
                (0.0, t0 >= 2),
                (-q * q * t, t0 <= qa / 2 - 1),
                (q * q, true),
            ];
            // the smallest subfield closed under the Hall part's scalar
            let d0 = (1..=params.e)
                .filter(|d| params.e % d == 0)
                .find(|&d| ((1u64 << d) - 1) % t0 == 0)
                .unwrap_or(params.e);
            let q0 = (1u64 << d0) as f64;
            (w, lam, q0 * q0 * t)
        }
        SzCase::BorelTwoGroup => {
            let w = SzCaseWeights {
                involution: 0.0,
                order_four: 0.0,
                a0: 1.0,
                a1: 1.0 + 2.0 * (q + 1.0) / (q * (q - 1.0)),
                a2: 1.0 + 2.0 * (q + 1.0) / (q * (q - 1.0)),
                t0: 1,
                t1: 1,
                t2: 1,
            };
            let lam = vec![
                (q.powi(5) - q.powi(4) + q.powi(3) - 2.0 * q * q, true),
                (-q * q, true),
                ((q.powi(3) + q * q + 2.0 * q) / (q - 1.0), true),
            ];
            (w, lam, 4.0)
        }
        SzCase::SubfieldQ1 { q1 } => {
            let e1 = q1.trailing_zeros();
            if q1 <= 2
                || q1 != (1u64 << e1)
                || e1 % 2 == 0
                || params.e % e1 != 0
                || params.e == e1
            {
                return Err(SuzukiError::InadmissibleParameters(format!(
                    "q1 = {} must be a proper odd-exponent subfield order above 2",
                    q1
                )));
            }
            let r1 = 1u64 << ((e1 + 1) / 2);
            let q1f = q1 as f64;
            let w = SzCaseWeights {
                involution: 0.0,
                order_four: 0.0,
                a0: 1.0,
                a1: 0.0,
                a2: 0.0,
                t0: q1 - 1,
                t1: q1 + r1 + 1,
                t2: q1 - r1 + 1,
            };
            let lam = vec![
                (q * q * (q - q1f) * (q * q + 1.0) / 2.0, true),
                ((q - q1f) * (q * q + 1.0) / 2.0, true),
                (0.0, true),
                (-q * q * (q1f - 1.0), q1 - 1 <= qa / 2 - 1),
            ];
            let sz1 = (q1 * q1 * (q1 - 1) * (q1 * q1 + 1)) as f64;
            (w, lam, sz1)
        }
        SzCase::TorusPlus => {
            let w = SzCaseWeights {
                involution: 0.0,
                order_four: 0.0,
                a0: 1.0,
                a1: 0.0,
                a2: 0.0,
                t0: 1,
                t1: 1,
                t2: 1,
            };
            let lam = vec![
                (q.powi(5) / 2.0 - q.powi(4) + q.powi(3) / 2.0 - q * q, true),
                (q.powi(3) / 2.0 - q * q + q / 2.0 - 1.0, true),
                (-q * q, true),
                (0.0, true),
            ];
            (w, lam, 5.0)
        }
        SzCase::TorusMinus => {
            let w = SzCaseWeights {
                involution: 0.0,
                order_four: 0.0,
                a0: 1.0,
                a1: 2.0 * (q * q + q + 2.0) / (q * q - q + r),
                a2: 0.0,
                t0: 1,
                t1: 1,
                t2: 1,
            };
            let lam = vec![
                (q.powi(5) - q.powi(4) + q.powi(3) - 2.0 * q * q, true),
                (-q * q, true),
                ((2.0 * q.powi(4) + 2.0 * q.powi(3) + 4.0 * q * q) / (q * q - q + r), true),
                (0.0, true),
                (q.powi(3) * r / 2.0 + q * q * r / 2.0 + q * r, true),
            ];
            (w, lam, 5.0)
        }
    };

    let mut spectrum: Vec<f64> = raw.iter().filter(|&&(_, on)| on).map(|&(v, _)| v).collect();
    spectrum.sort_by(|a, b| a.partial_cmp(b).unwrap());
    spectrum.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0));
    let d = raw[0].0; // the principal-character eigenvalue is the row sum
    let tau = spectrum[0];
    if tau >= 0.0 {
        return Err(SuzukiError::InadmissibleParameters(format!(
            "case {:?} has no negative eigenvalue",
            case
        )));
    }
    let n = params.group_order() as f64;
    let bound = n / (1.0 - d / tau);
    let rho_upper = bound / (n * stab_floor).sqrt();
    Ok(SzCaseSpectrum {
        case,
        params,
        spectrum,
        d,
        tau,
        bound,
        weights,
        stabilizer_floor: stab_floor,
        rho_upper,
    })
}

/// Maps a case's family weights onto the concrete conjugacy classes of an
/// enumerated `Sz(q)` group, keyed by element order.
pub fn case_weighting(
    spec: &SzCaseSpectrum,
    profile: &ActionProfile,
) -> Result<ClassWeighting, SuzukiError> {
    let table = profile.action().group();
    let params = &spec.params;
    let w = &spec.weights;
    let mut weights = vec![0.0f64; table.n_classes()];
    for c in 0..table.n_classes() as u32 {
        let order = table.element_order(table.class_rep(c)) as u64;
        let kind = classify_order(params, order)?;
        weights[c as usize] = match kind {
            SzClassKind::Identity => 0.0,
            SzClassKind::Involution => w.involution,
            SzClassKind::OrderFour => w.order_four,
            SzClassKind::TorusA0 => {
                if w.t0 % order == 0 {
                    0.0
                } else {
                    w.a0
                }
            }
            SzClassKind::TorusA1 => {
                if w.t1 % order == 0 {
                    0.0
                } else {
                    w.a1
                }
            }
            SzClassKind::TorusA2 => {
                if w.t2 % order == 0 {
                    0.0
                } else {
                    w.a2
                }
            }
        };
    }
    Ok(ClassWeighting::new(profile, weights)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters_q8() {
        let p = SzParameters::new(3).unwrap();
        assert_eq!(p.q, 8);
        assert_eq!(p.r, 4);
        assert_eq!(p.r * p.r, 2 * p.q);
        assert_eq!(p.group_order(), 29120);
        assert_eq!(p.n_classes(), 11);
        assert!(SzParameters::new(4).is_err());
        assert!(SzParameters::new(1).is_err());
    }

    #[test]
    fn class_inventory_q8() {
        let p = SzParameters::new(3).unwrap();
        let total: u64 = p.class_families().iter().map(|f| f.count * f.size).sum();
        assert_eq!(total, 29120);
        // involutions
        assert_eq!(p.class_families()[1].size, 455);
    }

    #[test]
    fn degree_squares_sum_to_group_order() {
        for e in [3u32, 5, 7, 9] {
            let p = SzParameters::new(e).unwrap();
            let sum: u128 = p
                .character_degrees()
                .iter()
                .map(|&(d, m)| d as u128 * d as u128 * m as u128)
                .sum();
            assert_eq!(sum, p.group_order() as u128, "e = {}", e);
        }
    }

    #[test]
    fn degrees_q8() {
        let p = SzParameters::new(3).unwrap();
        let degs = p.character_degrees();
        assert_eq!(
            degs,
            vec![(1, 1), (64, 1), (65, 3), (35, 3), (91, 1), (14, 2)]
        );
    }

    #[test]
    fn character_checks_q8_and_q32() {
        for e in [3u32, 5] {
            let report = sz_character_checks(e).unwrap();
            assert_eq!(report.sum_degree_squares, report.group_order);
            assert_eq!(report.n_characters, report.n_classes);
            let tol = 1e-6 * (report.group_order as f64).sqrt();
            assert!(
                report.max_orthogonality_error < tol,
                "orthogonality error {} at q = {}",
                report.max_orthogonality_error,
                report.q
            );
        }
    }

    #[test]
    fn q32_order() {
        let p = SzParameters::new(5).unwrap();
        assert_eq!(p.group_order(), 32 * 32 * 31 * 1025);
    }

    #[test]
    fn class_sum_records_q8() {
        let p = SzParameters::new(3).unwrap();
        // whole torus stripped: nothing left
        let rec = sz_class_sums(&p, 0, 7).unwrap();
        assert_eq!(rec.stripped_size, 0);
        let rec = sz_class_sums(&p, 0, 1).unwrap();
        assert_eq!(rec.stripped_size, 12480);
        assert_eq!(rec.sum_when_divisible, -64 * 65 * 1);
        let rec = sz_class_sums(&p, 2, 1).unwrap();
        assert_eq!(rec.stripped_size, 5824);
        assert!(sz_class_sums(&p, 0, 3).is_err());
    }

    #[test]
    fn case_values_q8() {
        let s = sz_case_spectrum(SzCase::DihedralFull, 3).unwrap();
        assert_eq!(s.spectrum, vec![-56.0, 56.0, 464.0, 7224.0]);
        assert_eq!(s.d, 7224.0);
        assert_eq!(s.tau, -56.0);
        assert!((s.bound - 224.0).abs() < 1e-9);
        assert!(s.conjecture_satisfied());

        let s = sz_case_spectrum(SzCase::CyclicFull, 3).unwrap();
        assert_eq!(s.d, 7231.0);
        assert_eq!(s.tau, -49.0);
        assert!((s.bound - 196.0).abs() < 1e-9);

        let s = sz_case_spectrum(SzCase::BorelTwoGroup, 3).unwrap();
        assert_eq!(s.d, 29056.0);
        assert_eq!(s.tau, -64.0);
        assert!((s.bound - 64.0).abs() < 1e-9);

        let s = sz_case_spectrum(SzCase::TorusPlus, 3).unwrap();
        assert_eq!(s.d, 12480.0);
        assert!((s.bound - 1040.0 / 7.0).abs() < 1e-9);

        let s = sz_case_spectrum(SzCase::TorusMinus, 3).unwrap();
        assert_eq!(s.d, 29056.0);
        assert_eq!(s.tau, -64.0);
        assert!((s.bound - 64.0).abs() < 1e-9);
    }

    #[test]
    fn mid_cases_need_proper_divisors() {
        // q - 1 = 7 is prime: no admissible middle t0 at e = 3
        assert!(sz_case_spectrum(SzCase::DihedralMid { t0: 3 }, 3).is_err());
        assert!(sz_case_spectrum(SzCase::CyclicMid { t0: 7 }, 3).is_err());
        // q = 512: q - 1 = 511 = 7 * 73
        let s = sz_case_spectrum(SzCase::DihedralMid { t0: 7 }, 9).unwrap();
        assert!(s.conjecture_satisfied());
        let s = sz_case_spectrum(SzCase::CyclicMid { t0: 73 }, 9).unwrap();
        assert!(s.conjecture_satisfied());
    }

    #[test]
    fn mid_case_row_sum_matches_derangement_count() {
        // d must equal the derangement count assembled from class sums
        let p = SzParameters::new(9).unwrap();
        let s = sz_case_spectrum(SzCase::DihedralMid { t0: 7 }, 9).unwrap();
        let order4 = p.q * (p.q - 1) * (p.q * p.q + 1);
        let a0 = sz_class_sums(&p, 0, 7).unwrap().stripped_size;
        let a1 = sz_class_sums(&p, 1, 1).unwrap().stripped_size;
        let a2 = sz_class_sums(&p, 2, 1).unwrap().stripped_size;
        assert_eq!(s.d, (order4 + a0 + a1 + a2) as f64);

        let s = sz_case_spectrum(SzCase::CyclicMid { t0: 73 }, 9).unwrap();
        let invol = (p.q - 1) * (p.q * p.q + 1);
        let a0 = sz_class_sums(&p, 0, 73).unwrap().stripped_size;
        assert_eq!(s.d, (invol + order4 + a0 + a1 + a2) as f64);
    }

    #[test]
    fn subfield_case_q512() {
        let s = sz_case_spectrum(SzCase::SubfieldQ1 { q1: 8 }, 9).unwrap();
        let q = 512.0f64;
        assert_eq!(s.d, q * q * (q - 8.0) * (q * q + 1.0) / 2.0);
        assert_eq!(s.tau, -q * q * 7.0);
        // |S| < 2 q^2 q1
        assert!(s.bound < 2.0 * q * q * 8.0);
        assert!(s.conjecture_satisfied());
        // q1 must be a proper subfield power with odd exponent
        assert!(sz_case_spectrum(SzCase::SubfieldQ1 { q1: 4 }, 9).is_err());
        assert!(sz_case_spectrum(SzCase::SubfieldQ1 { q1: 8 }, 3).is_err());
    }

    #[test]
    fn all_q8_cases_satisfy_the_bound() {
        for case in [
            SzCase::DihedralFull,
            SzCase::CyclicFull,
            SzCase::BorelTwoGroup,
            SzCase::BorelHall { t0: 7 },
            SzCase::TorusPlus,
            SzCase::TorusMinus,
        ] {
            let s = sz_case_spectrum(case, 3).unwrap();
            assert!(s.conjecture_satisfied(), "{:?}: rho_upper = {}", case, s.rho_upper);
        }
    }
}
