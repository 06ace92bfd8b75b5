//! Finite groups, their unitary irreducible representations, and the
//! position/Fourier measurement pair on the group function space `C^N`.
//!
//! Catalog: cyclic `Z<N>` (`1 ≤ N ≤ 64`), dihedral `D<n>` (`2 ≤ n ≤ 12`,
//! order `2n`), `S3` and `Q8`. Names are case-insensitive.
//!
//! Fourier outcomes are flattened with representations in catalog order and
//! matrix entries row-major inside each representation.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::entropy_bounds::{bound_state_independent, measurement_entropy};
use crate::error::{Error, Result};
use crate::math;
use crate::measurement::{computational_basis, Measurement, PureState, QuantumState};
use crate::numerics::Matrix;
use crate::tolerance;

const MAX_CYCLIC: usize = 64;
const MAX_DIHEDRAL: usize = 12;
/// Largest order for which associativity is checked on every triple.
const FULL_ASSOCIATIVITY: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Cyclic(usize),
    Dihedral(usize),
    S3,
    Q8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    family: Option<Family>,
}

impl FiniteGroup {
    /// Builds a group from its multiplication table, `table[a][b] = index of a·b`.
    ///
    /// The table must be a Latin square with a two-sided identity; associativity
    /// is checked on all triples when the order is at most 24 and on a fixed
    /// sample of triples otherwise. Groups built this way have no
    /// representation table.
    pub fn from_table(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        Self::checked(name.to_string(), labels, table, None)
    }

    fn checked(name: String, labels: Vec<String>, table: Vec<Vec<usize>>, family: Option<Family>) -> Result<Self> {
        let n = table.len();
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        if n == 0 {
            return bad("empty multiplication table".into());
        }
        if labels.len() != n {
            return bad(format!("{} labels for order {n}", labels.len()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return bad(format!("row {a} has {} entries, expected {n}", row.len()));
            }
            let mut seen = vec![false; n];
            for &c in row {
                if c >= n || seen[c] {
                    return bad(format!("row {a} is not a permutation"));
                }
                seen[c] = true;
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if seen[row[b]] {
                    return bad(format!("column {b} is not a permutation"));
                }
                seen[row[b]] = true;
            }
        }
        let identity = match (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) {
            Some(e) => e,
            None => return bad("no identity element".into()),
        };
        // In a Latin square with identity every element has a unique right
        // inverse; it must also be a left inverse.
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n).find(|&b| table[a][b] == identity).unwrap_or(identity);
            if table[b][a] != identity {
                return bad(format!("element {a} has no two-sided inverse"));
            }
            inverses.push(b);
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        let associative = if n <= FULL_ASSOCIATIVITY {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))))
        } else {
            (0..n).all(|a| (0..n).all(|b| assoc(a, b, (a * 7 + b * 13 + 1) % n)))
        };
        if !associative {
            return bad("multiplication is not associative".into());
        }
        Ok(Self { name, labels, table: table.concat(), identity, inverses, family })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&z| (0..n).all(|x| self.mul(z, x) == self.mul(x, z))).collect()
    }
}

fn parse_size(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn family_from_name(name: &str) -> Option<Family> {
    let upper = name.trim().to_ascii_uppercase();
    match upper.as_str() {
        "S3" => return Some(Family::S3),
        "Q8" => return Some(Family::Q8),
        _ => {}
    }
    if let Some(rest) = upper.strip_prefix('Z') {
        return parse_size(rest).filter(|n| (1..=MAX_CYCLIC).contains(n)).map(Family::Cyclic);
    }
    if let Some(rest) = upper.strip_prefix('D') {
        return parse_size(rest).filter(|n| (2..=MAX_DIHEDRAL).contains(n)).map(Family::Dihedral);
    }
    None
}

// S3 elements: permutations of {0,1,2} in lexicographic order.
const S3_PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn s3_index(p: [usize; 3]) -> usize {
    S3_PERMS.iter().position(|&q| q == p).unwrap_or(0)
}

// Q8 elements: index = unit + 4·[negative], units 1, i, j, k.
const Q8_UNITS: [&str; 4] = ["1", "i", "j", "k"];

fn q8_unit_mul(a: usize, b: usize) -> (bool, usize) {
    // (negative, unit) of the product of two units.
    const T: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    T[a][b]
}

/// Looks up a catalog group by name.
pub fn build_group(name: &str) -> Result<FiniteGroup> {
    let family = family_from_name(name).ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
    let (canonical, labels, table): (String, Vec<String>, Vec<Vec<usize>>) = match family {
        Family::Cyclic(n) => (
            format!("Z{n}"),
            (0..n).map(|x| x.to_string()).collect(),
            (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect(),
        ),
        Family::Dihedral(n) => {
            // r^a s^f has index a + n·f; (r^a s^f)(r^b s^g) = r^{a + (−1)^f b} s^{f+g}.
            let label = |a: usize, f: usize| match (a, f) {
                (0, 0) => "e".to_string(),
                (0, 1) => "s".to_string(),
                (1, 0) => "r".to_string(),
                (1, 1) => "rs".to_string(),
                (a, 0) => format!("r^{a}"),
                (a, _) => format!("r^{a}s"),
            };
            let labels = (0..2 * n).map(|x| label(x % n, x / n)).collect();
            let table = (0..2 * n)
                .map(|x| {
                    (0..2 * n)
                        .map(|y| {
                            let (a, f, b, g) = (x % n, x / n, y % n, y / n);
                            let rot = if f == 0 { (a + b) % n } else { (a + n - b) % n };
                            rot + n * ((f + g) % 2)
                        })
                        .collect()
                })
                .collect();
            (format!("D{n}"), labels, table)
        }
        Family::S3 => (
            "S3".to_string(),
            S3_PERMS.iter().map(|p| format!("{}{}{}", p[0] + 1, p[1] + 1, p[2] + 1)).collect(),
            // (σ∘τ)(x) = σ(τ(x))
            S3_PERMS
                .iter()
                .map(|s| S3_PERMS.iter().map(|t| s3_index([s[t[0]], s[t[1]], s[t[2]]])).collect())
                .collect(),
        ),
        Family::Q8 => (
            "Q8".to_string(),
            (0..8).map(|x| format!("{}{}", if x >= 4 { "-" } else { "" }, Q8_UNITS[x % 4])).collect(),
            (0..8)
                .map(|x| {
                    (0..8)
                        .map(|y| {
                            let (neg, unit) = q8_unit_mul(x % 4, y % 4);
                            let neg = neg ^ (x >= 4) ^ (y >= 4);
                            unit + if neg { 4 } else { 0 }
                        })
                        .collect()
                })
                .collect(),
        ),
    };
    FiniteGroup::checked(canonical, labels, table, Some(family))
}

/// One irreducible unitary representation, `matrices[x] = π(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub name: String,
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrrepTable {
    irreps: Vec<Irrep>,
    order: usize,
}

impl IrrepTable {
    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|p| p.dim).collect()
    }

    pub fn max_dim(&self) -> usize {
        self.irreps.iter().map(|p| p.dim).max().unwrap_or(1)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `(π, i, j)` for each Fourier outcome, in flattening order.
    pub fn outcome_index(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.order);
        for (k, p) in self.irreps.iter().enumerate() {
            for i in 0..p.dim {
                for j in 0..p.dim {
                    out.push((k, i, j));
                }
            }
        }
        out
    }

    /// `√(d/N)·(π_ij(x))_x` for every outcome, in flattening order.
    pub fn peter_weyl_vectors(&self) -> Vec<Vec<Complex64>> {
        let n = self.order as f64;
        self.outcome_index()
            .into_iter()
            .map(|(k, i, j)| {
                let p = &self.irreps[k];
                let s = math::sqrt(p.dim as f64 / n);
                p.matrices.iter().map(|m| m[(i, j)] * s).collect()
            })
            .collect()
    }

    /// Checks the representation axioms and Schur orthogonality against `g`.
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let n = g.order();
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        if self.order != n {
            return bad(format!("table for order {} used with group of order {n}", self.order));
        }
        let total: usize = self.irreps.iter().map(|p| p.dim * p.dim).sum();
        if total != n {
            return bad(format!("sum of squared dimensions is {total}, expected {n}"));
        }
        for p in &self.irreps {
            if p.matrices.len() != n {
                return bad(format!("representation {} has {} matrices", p.name, p.matrices.len()));
            }
            let id = Matrix::identity(p.dim);
            if p.matrices[g.identity()].max_abs_diff(&id) > tolerance::HERMITIAN {
                return bad(format!("representation {} is not the identity at e", p.name));
            }
            for m in &p.matrices {
                if m.rows() != p.dim || !m.is_square() || m.adjoint().matmul(m).max_abs_diff(&id) > tolerance::HERMITIAN {
                    return bad(format!("representation {} is not unitary", p.name));
                }
            }
            for x in 0..n {
                for y in 0..n {
                    let lhs = &p.matrices[g.mul(x, y)];
                    if lhs.max_abs_diff(&p.matrices[x].matmul(&p.matrices[y])) > tolerance::HERMITIAN {
                        return bad(format!("representation {} fails the homomorphism law", p.name));
                    }
                }
            }
        }
        // The Peter–Weyl vectors are orthonormal exactly when Schur
        // orthogonality holds for all matrix coefficients.
        let vectors = self.peter_weyl_vectors();
        for (a, u) in vectors.iter().enumerate() {
            for (b, v) in vectors.iter().enumerate().skip(a) {
                let dot: Complex64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
                let expected = if a == b { 1.0 } else { 0.0 };
                if (dot - expected).norm() > 1e-8 {
                    return bad(format!("Schur orthogonality fails for outcomes {a} and {b}"));
                }
            }
        }
        Ok(())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn scalar(v: Complex64) -> Matrix {
    Matrix::from_fn(1, 1, |_, _| v)
}

fn one_dim(name: &str, values: Vec<Complex64>) -> Irrep {
    Irrep { name: name.to_string(), dim: 1, matrices: values.into_iter().map(scalar).collect() }
}

fn two_dim(name: String, matrices: Vec<[[Complex64; 2]; 2]>) -> Irrep {
    Irrep { name, dim: 2, matrices: matrices.into_iter().map(|m| Matrix::from_fn(2, 2, |i, j| m[i][j])).collect() }
}

fn cyclic_irreps(n: usize) -> Vec<Irrep> {
    (0..n)
        .map(|k| {
            let values = (0..n)
                .map(|x| {
                    // Reduce k·x first so the angle stays in [0, 2π).
                    let theta = 2.0 * PI * ((k * x) % n) as f64 / n as f64;
                    c(math::cos(theta), math::sin(theta))
                })
                .collect();
            one_dim(&format!("chi{k}"), values)
        })
        .collect()
}

fn dihedral_irreps(n: usize) -> Vec<Irrep> {
    let sign = |a: usize, f: usize, r: f64, s: f64| {
        let rv = if a % 2 == 1 { r } else { 1.0 };
        let sv = if f == 1 { s } else { 1.0 };
        c(rv * sv, 0.0)
    };
    let mut chars: Vec<(&str, f64, f64)> = vec![("trivial", 1.0, 1.0), ("sign", 1.0, -1.0)];
    if n % 2 == 0 {
        chars.push(("alt+", -1.0, 1.0));
        chars.push(("alt-", -1.0, -1.0));
    }
    let mut out: Vec<Irrep> = chars
        .into_iter()
        .map(|(name, r, s)| one_dim(name, (0..2 * n).map(|x| sign(x % n, x / n, r, s)).collect()))
        .collect();
    for h in 1..=(n - 1) / 2 {
        let matrices = (0..2 * n)
            .map(|x| {
                let (a, f) = (x % n, x / n);
                let theta = 2.0 * PI * ((h * a) % n) as f64 / n as f64;
                let (co, si) = (math::cos(theta), math::sin(theta));
                // R(θ)·S^f with S = diag(1, −1).
                let t = if f == 1 { -1.0 } else { 1.0 };
                [[c(co, 0.0), c(-si * t, 0.0)], [c(si, 0.0), c(co * t, 0.0)]]
            })
            .collect();
        out.push(two_dim(format!("rho{h}"), matrices));
    }
    out
}

fn s3_irreps() -> Vec<Irrep> {
    let parity = |p: &[usize; 3]| {
        let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        if inversions % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    // Permutation action on the orthonormal basis (1,−1,0)/√2, (1,1,−2)/√6 of
    // the sum-zero plane.
    let basis = [
        [1.0 / math::sqrt(2.0), -1.0 / math::sqrt(2.0), 0.0],
        [1.0 / math::sqrt(6.0), 1.0 / math::sqrt(6.0), -2.0 / math::sqrt(6.0)],
    ];
    let standard = S3_PERMS
        .iter()
        .map(|p| {
            let mut m = [[c(0.0, 0.0); 2]; 2];
            for (i, u) in basis.iter().enumerate() {
                for (j, v) in basis.iter().enumerate() {
                    // u · P_σ v with (P_σ v)_{σ(x)} = v_x.
                    let s: f64 = (0..3).map(|x| u[p[x]] * v[x]).sum();
                    m[i][j] = c(s, 0.0);
                }
            }
            m
        })
        .collect();
    vec![
        one_dim("trivial", vec![c(1.0, 0.0); 6]),
        one_dim("sign", S3_PERMS.iter().map(|p| c(parity(p), 0.0)).collect()),
        two_dim("standard".to_string(), standard),
    ]
}

fn q8_irreps() -> Vec<Irrep> {
    let mut out: Vec<Irrep> = [(1.0, 1.0, "trivial"), (1.0, -1.0, "i+"), (-1.0, 1.0, "j+"), (-1.0, -1.0, "k+")]
        .into_iter()
        .map(|(a, b, name)| {
            // Characters of Q8/{±1}: i ↦ a, j ↦ b, k ↦ ab.
            let unit = [1.0, a, b, a * b];
            one_dim(name, (0..8).map(|x| c(unit[x % 4], 0.0)).collect())
        })
        .collect();
    let z = c(0.0, 0.0);
    let units = [
        [[c(1.0, 0.0), z], [z, c(1.0, 0.0)]],
        [[c(0.0, 1.0), z], [z, c(0.0, -1.0)]],
        [[z, c(1.0, 0.0)], [c(-1.0, 0.0), z]],
        [[z, c(0.0, 1.0)], [c(0.0, 1.0), z]],
    ];
    let matrices = (0..8)
        .map(|x| {
            let s = if x >= 4 { -1.0 } else { 1.0 };
            units[x % 4].map(|row| row.map(|v| v * s))
        })
        .collect();
    out.push(two_dim("spin".to_string(), matrices));
    out
}

/// Irreducible unitary representations of a catalog group, validated.
pub fn irreps(g: &FiniteGroup) -> Result<IrrepTable> {
    let irreps = match g.family {
        Some(Family::Cyclic(n)) => cyclic_irreps(n),
        Some(Family::Dihedral(n)) => dihedral_irreps(n),
        Some(Family::S3) => s3_irreps(),
        Some(Family::Q8) => q8_irreps(),
        None => return Err(Error::UnknownGroup(g.name.clone())),
    };
    let table = IrrepTable { irreps, order: g.order() };
    table.validate(g)?;
    Ok(table)
}

/// Position measurement `Q_x = |x⟩⟨x|` and Fourier measurement
/// `P_{ijπ} = (d(π)/N)|π_ij⟩⟨π_ij|` on `C^N`.
pub fn peter_weyl_measurements(table: &IrrepTable) -> Result<(Measurement, Measurement)> {
    let n = table.order();
    let fourier = table.peter_weyl_vectors().iter().map(|v| Matrix::projector(v)).collect();
    Ok((computational_basis(n), Measurement::validate(fourier, n)?))
}

/// Coefficients `ψ̂(i,j,π) = √(d(π)/N)·⟨π_ij|ψ⟩`, in flattening order.
#[derive(Debug, Clone, PartialEq)]
pub struct NcFourier {
    pub index: Vec<(usize, usize, usize)>,
    pub coefficients: Vec<Complex64>,
}

impl NcFourier {
    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.coefficients.iter().map(|z| z.norm_sqr()).collect()
    }
}

pub fn nc_fourier(psi: &PureState, table: &IrrepTable) -> Result<NcFourier> {
    let n = table.order();
    if psi.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: psi.dim() });
    }
    let coefficients = table
        .peter_weyl_vectors()
        .iter()
        .map(|v| v.iter().zip(psi.amplitudes()).map(|(a, b)| a.conj() * b).sum())
        .collect();
    Ok(NcFourier { index: table.outcome_index(), coefficients })
}

/// `log₂N − log₂ max_π d(π)` bits.
pub fn group_bound_rhs(table: &IrrepTable) -> f64 {
    math::log2(table.order() as f64) - math::log2(table.max_dim() as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupReport {
    pub group: String,
    pub position_entropy: f64,
    pub fourier_entropy: f64,
    /// `position_entropy + fourier_entropy`
    pub lhs: f64,
    /// [`group_bound_rhs`]
    pub rhs: f64,
    /// `lhs − rhs`
    pub slack: f64,
    /// State-independent bound of the position/Fourier pair.
    pub state_independent: f64,
    /// Parseval residual `|Σ|ψ̂|² − 1|`.
    pub parseval_residual: f64,
}

impl GroupReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.slack >= -tol
    }

    pub fn is_equality(&self, tol: f64) -> bool {
        self.slack.abs() <= tol
    }

    /// `rhs` agrees with the state-independent bound of the two measurements.
    pub fn consistent(&self, tol: f64) -> bool {
        (self.rhs - self.state_independent).abs() <= tol
    }
}

pub fn verify_group_case(g: &FiniteGroup, table: &IrrepTable, psi: &PureState) -> Result<GroupReport> {
    if psi.dim() != g.order() {
        return Err(Error::DimensionMismatch { expected: g.order(), found: psi.dim() });
    }
    let (position, fourier) = peter_weyl_measurements(table)?;
    let position_entropy = measurement_entropy(&position, psi)?;
    let fourier_entropy = measurement_entropy(&fourier, psi)?;
    let lhs = position_entropy + fourier_entropy;
    let rhs = group_bound_rhs(table);
    Ok(GroupReport {
        group: g.name().to_string(),
        position_entropy,
        fourier_entropy,
        lhs,
        rhs,
        slack: lhs - rhs,
        state_independent: bound_state_independent(&position, &fourier)?.bound_bits,
        parseval_residual: (nc_fourier(psi, table)?.norm_sqr() - 1.0).abs(),
    })
}

/// The delta function at the identity.
pub fn delta_state(g: &FiniteGroup) -> PureState {
    PureState::basis(g.order(), g.identity())
}
