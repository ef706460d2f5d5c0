//! Exhaustive search of identical-ply stacking sequences with prescribed
//! coupling and homogeneity properties.
//!
//! Predicates are evaluated on the stacking sums `Σ coef_k e^{2iδ_k}` and
//! `Σ coef_k e^{4iδ_k}` with the integer numerators of the `a_k, b_k, d_k,
//! c_k` coefficients. When every orientation is a multiple of 45° the phase
//! factors are `±1, ±i`, all partial sums are integers (held exactly in
//! `f64`), and the predicates are exact and independent of the material.
//! Other orientations fall back to floating sums compared with a relative
//! tolerance of `1e-12`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classification::{residuals, Residuals, Scales};
use crate::compliance::compliance;
use crate::error::{Error, Result};
use crate::laminate::{coef_numerators, stiffness_tensors, Laminate, DEFAULT_PLY_THICKNESS};
use crate::material::MaterialCatalog;

/// Numeric tolerance used to re-verify exact results on real tensors.
pub const VERIFY_TOL: f64 = 1e-9;
const FLOAT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Predicate {
    /// `B = O`
    #[serde(rename = "B_zero")]
    BZero,
    /// `V = O`
    #[serde(rename = "V_zero")]
    VZero,
    /// `C = A − D = O`
    #[serde(rename = "C_zero")]
    CZero,
    /// `B ≠ O`
    #[serde(rename = "B_nonzero")]
    BNonzero,
    /// `R1^B = 0`
    #[serde(rename = "R1B_zero")]
    R1BZero,
    /// `v1 = O` with `B ≠ O`
    #[serde(rename = "warp_free")]
    WarpFree,
    /// `v2 = O` with `B ≠ O`
    #[serde(rename = "extension_free")]
    ExtensionFree,
    /// Only 0° and 90° plies, in equal numbers.
    #[serde(rename = "balanced_crossply")]
    BalancedCrossply,
}

impl Predicate {
    pub const ALL: [Predicate; 8] = [
        Predicate::BZero,
        Predicate::VZero,
        Predicate::CZero,
        Predicate::BNonzero,
        Predicate::R1BZero,
        Predicate::WarpFree,
        Predicate::ExtensionFree,
        Predicate::BalancedCrossply,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::BZero => "B_zero",
            Predicate::VZero => "V_zero",
            Predicate::CZero => "C_zero",
            Predicate::BNonzero => "B_nonzero",
            Predicate::R1BZero => "R1B_zero",
            Predicate::WarpFree => "warp_free",
            Predicate::ExtensionFree => "extension_free",
            Predicate::BalancedCrossply => "balanced_crossply",
        }
    }

    /// Sums that must vanish, used for pruning.
    fn zero_groups(self) -> &'static [Group] {
        use Group::*;
        match self {
            Predicate::BZero => &[B4, B2],
            Predicate::VZero | Predicate::R1BZero => &[B2],
            Predicate::CZero => &[C4, C2],
            Predicate::WarpFree => &[B2, A2],
            Predicate::ExtensionFree => &[B2, D2],
            Predicate::BNonzero | Predicate::BalancedCrossply => &[],
        }
    }
}

impl std::fmt::Display for Predicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Predicate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown predicate `{s}`")))
    }
}

/// Sequences identified as equivalent before reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dedup {
    /// Report every sequence.
    #[default]
    None,
    /// A sequence and its reverse (which flips the sign of `B` and `V`).
    Reversal,
    /// A sequence and the one turned by 90°.
    Swap,
    /// Both of the above.
    ReversalSwap,
}

impl std::str::FromStr for Dedup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Dedup::None),
            "reversal" => Ok(Dedup::Reversal),
            "swap" => Ok(Dedup::Swap),
            "reversal-swap" => Ok(Dedup::ReversalSwap),
            _ => Err(Error::InvalidInput(format!("unknown dedup policy `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub n: usize,
    pub orientations_deg: Vec<f64>,
    pub predicates: Vec<Predicate>,
    pub max_results: Option<usize>,
    #[serde(default)]
    pub dedup: Dedup,
    /// Material used for numeric re-verification.
    pub material: String,
    /// Skip the numeric re-verification.
    #[serde(default)]
    pub skip_verify: bool,
}

impl SearchSpec {
    pub fn new(n: usize, orientations_deg: &[f64], predicates: &[Predicate]) -> Self {
        Self {
            n,
            orientations_deg: orientations_deg.to_vec(),
            predicates: predicates.to_vec(),
            max_results: None,
            dedup: Dedup::None,
            material: "T300/5208".into(),
            skip_verify: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidInput(format!(
                "search needs at least 2 plies, got {}",
                self.n
            )));
        }
        if self.orientations_deg.is_empty() {
            return Err(Error::InvalidInput("orientation set is empty".into()));
        }
        if let Some(a) = self.orientations_deg.iter().find(|a| !a.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite orientation {a}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Group {
    A4,
    A2,
    B4,
    B2,
    D4,
    D2,
    C4,
    C2,
}

impl Group {
    const ALL: [Group; 8] = [
        Group::A4,
        Group::A2,
        Group::B4,
        Group::B2,
        Group::D4,
        Group::D2,
        Group::C4,
        Group::C2,
    ];

    fn coef(self) -> usize {
        self as usize / 2
    }

    fn quadruple(self) -> bool {
        (self as usize).is_multiple_of(2)
    }
}

/// The eight stacking sums, as integer numerators over `n`, `n²`, `n³`, `n³`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StackingSums {
    pub a4: (f64, f64),
    pub a2: (f64, f64),
    pub b4: (f64, f64),
    pub b2: (f64, f64),
    pub d4: (f64, f64),
    pub d2: (f64, f64),
    pub c4: (f64, f64),
    pub c2: (f64, f64),
}

impl StackingSums {
    fn from_array(a: [(f64, f64); 8]) -> Self {
        Self {
            a4: a[0],
            a2: a[1],
            b4: a[2],
            b2: a[3],
            d4: a[4],
            d2: a[5],
            c4: a[6],
            c2: a[7],
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Orientation {
    deg: f64,
    e2: (f64, f64),
    e4: (f64, f64),
    cross_ply: Option<bool>,
}

fn orientation(deg: f64) -> (Orientation, bool) {
    let q = deg / 45.0;
    let exact = (q - q.round()).abs() < 1e-9;
    let (e2, e4) = if exact {
        let m = (q.round() as i64).rem_euclid(8);
        let e2 = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][(m % 4) as usize];
        let e4 = if m % 2 == 0 { (1.0, 0.0) } else { (-1.0, 0.0) };
        (e2, e4)
    } else {
        let r = deg.to_radians();
        (
            ((2.0 * r).cos(), (2.0 * r).sin()),
            ((4.0 * r).cos(), (4.0 * r).sin()),
        )
    };
    let m180 = deg.rem_euclid(180.0);
    let cross_ply = if m180.abs() < 1e-9 || (m180 - 180.0).abs() < 1e-9 {
        Some(false)
    } else if (m180 - 90.0).abs() < 1e-9 {
        Some(true)
    } else {
        None
    };
    (
        Orientation {
            deg,
            e2,
            e4,
            cross_ply,
        },
        exact,
    )
}

/// Stacking sums of a sequence of orientations, degrees.
pub fn stacking_sums(angles_deg: &[f64]) -> StackingSums {
    let n = angles_deg.len();
    let mut acc = [(0.0, 0.0); 8];
    for (k, &deg) in angles_deg.iter().enumerate() {
        add_ply(&mut acc, &coefs(n, k + 1), &orientation(deg).0, 1.0);
    }
    StackingSums::from_array(acc)
}

fn coefs(n: usize, k: usize) -> [f64; 4] {
    let c = coef_numerators(n, k);
    [c.a as f64, c.b as f64, c.d as f64, c.c as f64]
}

/// Running (cos, sin) sums of the eight lamination terms.
type Sums = [(f64, f64); 8];

fn add_ply(acc: &mut Sums, coef: &[f64; 4], o: &Orientation, sign: f64) {
    for g in Group::ALL {
        let c = sign * coef[g.coef()];
        let e = if g.quadruple() { o.e4 } else { o.e2 };
        let slot = &mut acc[g as usize];
        slot.0 += c * e.0;
        slot.1 += c * e.1;
    }
}

/// Evaluates a predicate on the stacking sums; `eps` is the absolute
/// tolerance on each group (0 on the exact path).
fn holds(p: Predicate, sums: &Sums, eps: &[f64; 8], angles: &[Orientation]) -> bool {
    let zero = |g: Group| {
        let (re, im) = sums[g as usize];
        re.abs() <= eps[g as usize] && im.abs() <= eps[g as usize]
    };
    let b_zero = zero(Group::B4) && zero(Group::B2);
    match p {
        Predicate::BNonzero => !b_zero,
        Predicate::WarpFree | Predicate::ExtensionFree => {
            !b_zero && p.zero_groups().iter().all(|&g| zero(g))
        }
        Predicate::BalancedCrossply => {
            let cross = angles
                .iter()
                .map(|o| o.cross_ply)
                .collect::<Option<Vec<_>>>();
            cross.is_some_and(|c| 2 * c.iter().filter(|&&x| x).count() == c.len())
        }
        _ => p.zero_groups().iter().all(|&g| zero(g)),
    }
}

/// A sequence found by [`enumerate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub sequence_deg: Vec<f64>,
    pub sums: StackingSums,
    /// Whether the predicates were decided in exact arithmetic.
    pub exact: bool,
    pub verification: Option<VerifyReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredicateCheck {
    pub predicate: Predicate,
    pub passed: bool,
    /// Normalised residual the decision was based on.
    pub residual: f64,
}

/// Numeric check of predicates on the real tensors of a sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<PredicateCheck>,
    pub passed: bool,
    pub residuals: Residuals,
}

/// Builds the laminate and checks each predicate on its actual tensors to
/// [`VERIFY_TOL`].
pub fn verify(
    angles_deg: &[f64],
    material: &str,
    catalog: &MaterialCatalog,
    predicates: &[Predicate],
) -> Result<VerifyReport> {
    let lam = Laminate::identical("candidate", material, angles_deg, DEFAULT_PLY_THICKNESS)?;
    let s = stiffness_tensors(&lam, catalog)?;
    let c = compliance(&s)?;
    let r = residuals(&s, &c, &Scales::of(&s));
    let small = |x: f64| x < VERIFY_TOL;
    let coupled = !small(r.b);
    let checks: Vec<PredicateCheck> = predicates
        .iter()
        .map(|&p| {
            let (passed, residual) = match p {
                Predicate::BZero => (small(r.b), r.b),
                Predicate::VZero => (small(r.v), r.v),
                Predicate::CZero => (small(r.c), r.c),
                Predicate::BNonzero => (coupled, r.b),
                Predicate::R1BZero => (small(r.r1b), r.r1b),
                Predicate::WarpFree => (coupled && small(r.v1), r.v1),
                Predicate::ExtensionFree => (coupled && small(r.v2), r.v2),
                Predicate::BalancedCrossply => {
                    let os: Vec<Orientation> =
                        angles_deg.iter().map(|&d| orientation(d).0).collect();
                    (holds(p, &[(0.0, 0.0); 8], &[0.0; 8], &os), 0.0)
                }
            };
            PredicateCheck {
                predicate: p,
                passed,
                residual,
            }
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        checks,
        passed,
        residuals: r,
    })
}

struct Searcher {
    n: usize,
    options: Vec<Orientation>,
    /// Index of the orientation turned by 90°, when it is in the set.
    swap: Vec<Option<usize>>,
    coefs: Vec<[f64; 4]>,
    /// `remaining[k][c]`: Σ |coef c| over plies `k+1..n` (0-based `k..n`).
    remaining: Vec<[f64; 4]>,
    eps: [f64; 8],
    groups: Vec<Group>,
    predicates: Vec<Predicate>,
    balanced: bool,
    dedup: Dedup,
    cap: usize,
}

impl Searcher {
    fn new(spec: &SearchSpec) -> (Self, bool) {
        let mut exact = true;
        let mut options = Vec::new();
        for &deg in &spec.orientations_deg {
            let (o, ex) = orientation(deg);
            exact &= ex;
            // duplicate orientations (mod 180°) would only repeat sequences
            if !options.iter().any(|p: &Orientation| angle_eq(p.deg, deg)) {
                options.push(o);
            }
        }
        let balanced = spec.predicates.contains(&Predicate::BalancedCrossply);
        if balanced {
            options.retain(|o| o.cross_ply.is_some());
        }
        let n = spec.n;
        let coefs: Vec<[f64; 4]> = (1..=n).map(|k| coefs(n, k)).collect();
        let mut remaining = vec![[0.0; 4]; n + 1];
        for k in (0..n).rev() {
            remaining[k] = std::array::from_fn(|c| remaining[k + 1][c] + coefs[k][c].abs());
        }
        let eps = if exact {
            [0.0; 8]
        } else {
            std::array::from_fn(|g| FLOAT_TOL * remaining[0][Group::ALL[g].coef()].max(1.0))
        };
        let mut groups: Vec<Group> = Vec::new();
        for &g in spec.predicates.iter().flat_map(|p| p.zero_groups()) {
            if !groups.contains(&g) {
                groups.push(g);
            }
        }
        let swap = options
            .iter()
            .map(|o| options.iter().position(|p| angle_eq(p.deg, o.deg + 90.0)))
            .collect();
        let searcher = Self {
            n,
            options,
            swap,
            coefs,
            remaining,
            eps,
            groups,
            predicates: spec.predicates.clone(),
            balanced,
            dedup: spec.dedup,
            cap: spec.max_results.unwrap_or(usize::MAX),
        };
        (searcher, exact)
    }

    fn feasible(&self, depth: usize, sums: &Sums, idx: &[usize]) -> bool {
        let rem = &self.remaining[depth];
        let ok = self.groups.iter().all(|&g| {
            let bound = rem[g.coef()] + self.eps[g as usize];
            let (re, im) = sums[g as usize];
            re.abs() <= bound && im.abs() <= bound
        });
        if !ok {
            return false;
        }
        if self.balanced {
            let nineties = idx
                .iter()
                .filter(|&&i| self.options[i].cross_ply == Some(true))
                .count();
            let zeros = idx.len() - nineties;
            if 2 * nineties > self.n || 2 * zeros > self.n {
                return false;
            }
        }
        true
    }

    fn accept(&self, sums: &Sums, idx: &[usize]) -> bool {
        let os: Vec<Orientation> = idx.iter().map(|&i| self.options[i]).collect();
        self.predicates
            .iter()
            .all(|&p| holds(p, sums, &self.eps, &os))
            && self.canonical(idx)
    }

    fn canonical(&self, idx: &[usize]) -> bool {
        let reversed = || idx.iter().rev().copied().collect::<Vec<_>>();
        let swapped = |v: &[usize]| v.iter().map(|&i| self.swap[i]).collect::<Option<Vec<_>>>();
        let mut variants: Vec<Vec<usize>> = Vec::new();
        match self.dedup {
            Dedup::None => {}
            Dedup::Reversal => variants.push(reversed()),
            Dedup::Swap => variants.extend(swapped(idx)),
            Dedup::ReversalSwap => {
                let r = reversed();
                variants.extend(swapped(idx));
                variants.extend(swapped(&r));
                variants.push(r);
            }
        }
        variants.iter().all(|v| idx <= v.as_slice())
    }

    fn dfs(&self, depth: usize, sums: &mut Sums, idx: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if out.len() >= self.cap {
            return;
        }
        if depth == self.n {
            if self.accept(sums, idx) {
                out.push(idx.clone());
            }
            return;
        }
        for (i, o) in self.options.iter().enumerate() {
            add_ply(sums, &self.coefs[depth], o, 1.0);
            idx.push(i);
            if self.feasible(depth + 1, sums, idx) {
                self.dfs(depth + 1, sums, idx, out);
            }
            idx.pop();
            add_ply(sums, &self.coefs[depth], o, -1.0);
        }
    }

    /// Feasible prefixes of length `depth`, in lexicographic order.
    fn prefixes(&self, depth: usize) -> Vec<(Vec<usize>, Sums)> {
        let mut level = vec![(Vec::new(), [(0.0, 0.0); 8])];
        for d in 0..depth {
            let mut next = Vec::new();
            for (idx, sums) in level {
                for (i, o) in self.options.iter().enumerate() {
                    let mut s = sums;
                    add_ply(&mut s, &self.coefs[d], o, 1.0);
                    let mut v = idx.clone();
                    v.push(i);
                    if self.feasible(d + 1, &s, &v) {
                        next.push((v, s));
                    }
                }
            }
            level = next;
        }
        level
    }
}

fn angle_eq(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(180.0);
    d < 1e-9 || 180.0 - d < 1e-9
}

/// Sequences (as orientation indices into the de-duplicated set) that pass
/// the exact predicates, in lexicographic order.
fn enumerate_indices(spec: &SearchSpec) -> Result<(Vec<Vec<usize>>, Vec<f64>, bool)> {
    spec.validate()?;
    let (searcher, exact) = Searcher::new(spec);
    let degs: Vec<f64> = searcher.options.iter().map(|o| o.deg).collect();
    if searcher.options.is_empty() {
        return Ok((Vec::new(), degs, exact));
    }
    // fan out over prefixes deep enough to keep the pool busy
    let k = searcher.options.len();
    let mut depth = 0;
    let mut count = 1usize;
    while depth < searcher.n.saturating_sub(1) && count < 256 {
        depth += 1;
        count = count.saturating_mul(k);
    }
    let prefixes = searcher.prefixes(depth);
    let chunks: Vec<Vec<Vec<usize>>> = prefixes
        .into_par_iter()
        .map(|(mut idx, mut sums)| {
            let mut out = Vec::new();
            searcher.dfs(depth, &mut sums, &mut idx, &mut out);
            out
        })
        .collect();
    let mut all: Vec<Vec<usize>> = chunks.into_iter().flatten().collect();
    all.truncate(searcher.cap);
    Ok((all, degs, exact))
}

/// Enumerates every sequence of `spec.n` plies drawn from the orientation
/// set that satisfies all predicates. Output order is lexicographic in the
/// orientation indices and does not depend on thread scheduling.
pub fn enumerate(spec: &SearchSpec, catalog: &MaterialCatalog) -> Result<Vec<SearchResult>> {
    if !spec.skip_verify {
        catalog.get(&spec.material)?;
    }
    let (seqs, degs, exact) = enumerate_indices(spec)?;
    seqs.into_par_iter()
        .map(|idx| {
            let sequence_deg: Vec<f64> = idx.iter().map(|&i| degs[i]).collect();
            let verification = if spec.skip_verify {
                None
            } else {
                Some(verify(
                    &sequence_deg,
                    &spec.material,
                    catalog,
                    &spec.predicates,
                )?)
            };
            Ok(SearchResult {
                sums: stacking_sums(&sequence_deg),
                sequence_deg,
                exact,
                verification,
            })
        })
        .collect()
}

/// Whether `angles_deg` passes `predicate` by the stacking sums alone.
pub fn exact_predicate(angles_deg: &[f64], predicate: Predicate) -> bool {
    let n = angles_deg.len();
    let mut acc = [(0.0, 0.0); 8];
    let mut exact = true;
    let os: Vec<Orientation> = angles_deg
        .iter()
        .enumerate()
        .map(|(k, &deg)| {
            let (o, ex) = orientation(deg);
            exact &= ex;
            add_ply(&mut acc, &coefs(n, k + 1), &o, 1.0);
            o
        })
        .collect();
    let eps = if exact {
        [0.0; 8]
    } else {
        let mass: [f64; 4] = std::array::from_fn(|c| (1..=n).map(|k| coefs(n, k)[c].abs()).sum());
        std::array::from_fn(|g| FLOAT_TOL * mass[Group::ALL[g].coef()].max(1.0))
    };
    holds(predicate, &acc, &eps, &os)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laminate::lamination_parameters;

    fn run(n: usize, set: &[f64], preds: &[Predicate]) -> Vec<Vec<f64>> {
        let spec = SearchSpec {
            skip_verify: true,
            ..SearchSpec::new(n, set, preds)
        };
        enumerate(&spec, &MaterialCatalog::builtin())
            .unwrap()
            .into_iter()
            .map(|r| r.sequence_deg)
            .collect()
    }

    #[test]
    fn sums_match_lamination_parameters() {
        let seq = [0.0, 45.0, -45.0, 90.0, 90.0, 0.0, 45.0];
        let s = stacking_sums(&seq);
        let lam = Laminate::identical("x", "T300/5208", &seq, 0.1).unwrap();
        let lp = lamination_parameters(&lam).unwrap();
        let n = seq.len() as f64;
        assert!((s.b2.0 / (n * n) - lp.b2().0).abs() < 1e-15);
        assert!((s.c4.1 / (n * n * n) - lp.c4().1).abs() < 1e-15);
        assert!((s.a2.1 / n - lp.a2().1).abs() < 1e-15);
    }

    #[test]
    fn two_plies_cross_ply_is_quasi_homogeneous() {
        let found = run(2, &[0.0, 90.0], &[Predicate::CZero]);
        assert!(found.contains(&vec![0.0, 90.0]));
        assert!(found.contains(&vec![0.0, 0.0]));
    }

    #[test]
    fn single_orientation_is_trivial() {
        for n in 2..6 {
            let found = run(n, &[30.0], &[Predicate::BZero, Predicate::CZero]);
            assert_eq!(found, vec![vec![30.0; n]]);
        }
    }

    #[test]
    fn infeasible_is_empty() {
        // an odd count of cross plies cannot be balanced
        assert!(run(3, &[0.0, 90.0], &[Predicate::BalancedCrossply]).is_empty());
        assert!(run(4, &[45.0], &[Predicate::BNonzero]).is_empty());
    }

    #[test]
    fn pruning_is_complete() {
        for preds in [
            vec![Predicate::BZero],
            vec![Predicate::CZero, Predicate::BNonzero],
            vec![Predicate::WarpFree],
            vec![Predicate::ExtensionFree],
            vec![Predicate::R1BZero],
        ] {
            let pruned = run(6, &[0.0, 45.0, -45.0, 90.0], &preds);
            let all = run(6, &[0.0, 45.0, -45.0, 90.0], &[]);
            let filtered: Vec<_> = all
                .into_iter()
                .filter(|s| preds.iter().all(|&p| exact_predicate(s, p)))
                .collect();
            assert_eq!(pruned, filtered, "{preds:?}");
        }
    }

    #[test]
    fn dedup_policies() {
        let preds = [
            Predicate::BalancedCrossply,
            Predicate::CZero,
            Predicate::BNonzero,
        ];
        let all = run(8, &[0.0, 90.0], &preds);
        let mut spec = SearchSpec {
            skip_verify: true,
            ..SearchSpec::new(8, &[0.0, 90.0], &preds)
        };
        spec.dedup = Dedup::ReversalSwap;
        let reduced = enumerate(&spec, &MaterialCatalog::builtin()).unwrap();
        assert!(!reduced.is_empty() && reduced.len() < all.len());
        assert!(reduced.iter().all(|r| all.contains(&r.sequence_deg)));
        spec.dedup = Dedup::Reversal;
        let rev = enumerate(&spec, &MaterialCatalog::builtin()).unwrap();
        assert!(rev.len() >= reduced.len() && rev.len() < all.len());
    }

    #[test]
    fn floating_path() {
        let found = run(4, &[30.0, -30.0], &[Predicate::BZero]);
        assert!(found.contains(&vec![30.0, -30.0, -30.0, 30.0]));
        assert!(!found.contains(&vec![30.0, -30.0, 30.0, -30.0]));
    }

    #[test]
    fn max_results_truncates_in_order() {
        let all = run(6, &[0.0, 90.0], &[Predicate::CZero]);
        let mut spec = SearchSpec {
            skip_verify: true,
            ..SearchSpec::new(6, &[0.0, 90.0], &[Predicate::CZero])
        };
        spec.max_results = Some(3);
        let few: Vec<_> = enumerate(&spec, &MaterialCatalog::builtin())
            .unwrap()
            .into_iter()
            .map(|r| r.sequence_deg)
            .collect();
        assert_eq!(few, all[..3].to_vec());
    }

    #[test]
    fn verification_of_antisymmetric_cross_ply() {
        let seq = [0.0, 90.0, 0.0, 90.0];
        let r = verify(
            &seq,
            "T300/5208",
            &MaterialCatalog::builtin(),
            &[Predicate::BNonzero, Predicate::BZero],
        )
        .unwrap();
        assert!(r.checks[0].passed && !r.checks[1].passed);
        // b_k sum sign: plies at 0 below the midplane give a negative B11
        let s = stacking_sums(&[0.0, 0.0, 90.0, 90.0]);
        assert!(s.b2.0 < 0.0);
    }

    #[test]
    fn invalid_specs() {
        let cat = MaterialCatalog::builtin();
        assert!(enumerate(&SearchSpec::new(1, &[0.0], &[]), &cat).is_err());
        assert!(enumerate(&SearchSpec::new(4, &[], &[]), &cat).is_err());
        let mut spec = SearchSpec::new(4, &[0.0], &[]);
        spec.material = "nope".into();
        assert!(enumerate(&spec, &cat).is_err());
        assert!("warp_free".parse::<Predicate>().is_ok() && "x".parse::<Predicate>().is_err());
    }
}
