//! The substitution `phi_K: x_i -> K_i(x, a)` and verification of the
//! identities and conjectures it produces.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{double_factorial, factorial, rat, rat_int, s_upper, stirling_first, Rational};
use crate::derivations::{cayley_k1, cayley_k2, dk1_calibration, Derivation, DerivationKind};
use crate::error::{Error, Result};
use crate::intertwine::{build_psi, b_coeff, t_coeff, PsiKind};
use crate::kravchuk::kravchuk;
use crate::poly::{binom_poly, determinant, Matrix, Monomial, Polynomial, Variable};

fn x(i: usize) -> Polynomial {
    Polynomial::x(i)
}

fn var_x() -> Polynomial {
    Polynomial::var(Variable::X)
}

fn var_a() -> Polynomial {
    Polynomial::var(Variable::A)
}

/// `phi_K(p)`: substitutes `K_i(x, a)` for every `x_i`, `i <= N`.
pub fn phi_k(p: &Polynomial, n: usize) -> Result<Polynomial> {
    let mut bindings = BTreeMap::new();
    for v in p.variables() {
        match v.index() {
            Some(i) if i <= n => {
                bindings.insert(v, kravchuk(i));
            }
            _ => return Err(Error::VariableOutOfRange { var: v, max: n }),
        }
    }
    p.substitute(&bindings)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Constant,
    OnlyA,
    OnlyX,
    Mixed,
}

impl Classification {
    pub fn of(image: &Polynomial) -> Self {
        match (image.contains_var(Variable::X), image.contains_var(Variable::A)) {
            (false, false) => Classification::Constant,
            (false, true) => Classification::OnlyA,
            (true, false) => Classification::OnlyX,
            (true, true) => Classification::Mixed,
        }
    }

    /// Classes allowed for `phi_K` images of kernel elements of `kind`.
    pub fn admissible(self, kind: DerivationKind) -> bool {
        match kind {
            DerivationKind::Kravchuk1 => matches!(self, Classification::Constant | Classification::OnlyA),
            DerivationKind::Kravchuk2 => matches!(self, Classification::Constant | Classification::OnlyX),
            DerivationKind::Weitzenbock => true,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Constant => "constant",
            Classification::OnlyA => "only_a",
            Classification::OnlyX => "only_x",
            Classification::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Refuted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub input: Polynomial,
    pub image: Polynomial,
    pub classification: Classification,
    /// `image - expected`; zero when nothing is expected.
    pub residual: Polynomial,
    /// `None` when no expected value was supplied.
    pub verdict: Option<Verdict>,
    pub expected: Option<Polynomial>,
}

pub fn classify(p: &Polynomial, n: usize, expected: Option<&Polynomial>) -> Result<IdentityReport> {
    let image = phi_k(p, n)?;
    let residual = match expected {
        Some(e) => &image - e,
        None => Polynomial::zero(),
    };
    let verdict = expected.map(|_| if residual.is_zero() { Verdict::Verified } else { Verdict::Refuted });
    Ok(IdentityReport {
        input: p.clone(),
        classification: Classification::of(&image),
        image,
        residual,
        verdict,
        expected: expected.cloned(),
    })
}

/// One verified-or-refuted instance of a conjecture.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureCheck {
    pub check_id: String,
    pub n: usize,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub verdict: Verdict,
    pub classification: Classification,
    /// `c` with `lhs = c * rhs`, when both sides are nonzero and proportional.
    pub ratio: Option<Rational>,
    pub notes: Vec<String>,
    pub runtime: Duration,
}

impl ConjectureCheck {
    fn new(check_id: impl Into<String>, n: usize, lhs: Polynomial, rhs: Polynomial, started: Instant) -> Self {
        let verdict = if lhs == rhs { Verdict::Verified } else { Verdict::Refuted };
        let ratio = if lhs.is_zero() { None } else { lhs.ratio_to(&rhs) };
        ConjectureCheck {
            check_id: check_id.into(),
            n,
            classification: Classification::of(&lhs),
            lhs,
            rhs,
            verdict,
            ratio,
            notes: Vec::new(),
            runtime: started.elapsed(),
        }
    }

    pub fn record(&self) -> CheckRecord {
        CheckRecord {
            check_id: self.check_id.clone(),
            n: self.n,
            verdict: self.verdict,
            classification: self.classification,
            lhs_canonical: self.lhs.to_string(),
            rhs_canonical: self.rhs.to_string(),
            ratio_if_proportional: self.ratio.as_ref().map(|r| r.to_string()),
            runtime_ms: self.runtime.as_millis() as u64,
        }
    }
}

/// Serialized form of a [`ConjectureCheck`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub check_id: String,
    pub n: usize,
    pub verdict: Verdict,
    pub classification: Classification,
    pub lhs_canonical: String,
    pub rhs_canonical: String,
    pub ratio_if_proportional: Option<String>,
    pub runtime_ms: u64,
}

/// Smallest `n` among refuted checks with the given id.
pub fn first_refutation(checks: &[ConjectureCheck], check_id: &str) -> Option<usize> {
    checks
        .iter()
        .filter(|c| c.check_id == check_id && c.verdict == Verdict::Refuted)
        .map(|c| c.n)
        .min()
}

/// `sum_i K_i sum_k (-1)^k / k! K_1^k w(k, n - i)` for a weight table `w`.
fn sigma_sum(n: usize, weight: impl Fn(usize, usize) -> Result<Rational>) -> Result<Polynomial> {
    let k1 = kravchuk(1);
    let k1_powers: Vec<Polynomial> = std::iter::successors(Some(Polynomial::one()), |p| Some(p * &k1))
        .take(n + 1)
        .collect();
    let mut total = Polynomial::zero();
    for i in 0..=n {
        let m = n - i;
        let mut inner = Polynomial::zero();
        for (k, pw) in k1_powers.iter().enumerate().take(m + 1) {
            let w = weight(k, m)?;
            if w.is_zero() {
                continue;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            inner += pw.scale(&(w * rat(sign, 1) / rat_int(factorial(k as u32))));
        }
        total += &kravchuk(i) * &inner;
    }
    Ok(total)
}

fn s_upper_or_boundary(k: usize, m: usize) -> Result<Rational> {
    match (k, m) {
        (0, 0) => Ok(Rational::one()),
        (0, _) => Ok(Rational::zero()),
        _ => s_upper(k, m),
    }
}

/// Conjecture 1 left side with the calibrated weights `c^k S^(k)(m)`, i.e.
/// `phi_K(sigma(x_n))` for the first Kravchuk derivation.
pub fn conjecture1_lhs(n: usize) -> Result<Polynomial> {
    let c = dk1_calibration();
    sigma_sum(n, |k, m| Ok(s_upper_or_boundary(k, m)? * num_traits::pow(c.clone(), k)))
}

/// Conjecture 1 left side with the uncalibrated `S^(k)(m)`.
pub fn conjecture1_literal_lhs(n: usize) -> Result<Polynomial> {
    sigma_sum(n, s_upper_or_boundary)
}

/// `0` for odd `n`; `(-1)^m (2m-1)!! a (a-2) ... (a-2m+2)` for `n = 2m`.
pub fn conjecture1_rhs(n: usize) -> Result<Polynomial> {
    if n % 2 == 1 {
        return Ok(Polynomial::zero());
    }
    let m = n / 2;
    let mut p = Polynomial::constant(rat_int(double_factorial(2 * m as i64 - 1)?));
    if m % 2 == 1 {
        p = -p;
    }
    for j in 0..m {
        p = &p * &(var_a() - Polynomial::int(2 * j as i64));
    }
    Ok(p)
}

fn check_n(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::Domain(format!("{what} needs n >= {min}, got {n}")));
    }
    Ok(())
}

pub fn conjecture1(n: usize) -> Result<ConjectureCheck> {
    check_n(n, 2, "conjecture 1")?;
    let started = Instant::now();
    let lhs = conjecture1_lhs(n)?;
    let rhs = conjecture1_rhs(n)?;
    let mut check = ConjectureCheck::new("conjecture1", n, lhs, rhs, started);
    let cayley = phi_k(&cayley_k1(n)?, n)?
        .scale(&(Rational::one() / rat_int(factorial(n as u32 - 2) * n)));
    let note = match (check.lhs.is_zero() && cayley.is_zero(), check.lhs.ratio_to(&cayley)) {
        (true, _) => "lhs = phi(C_n)/(n(n-2)!) = 0".to_string(),
        (false, Some(r)) => format!("lhs = {r} * phi(C_n)/(n(n-2)!)"),
        (false, None) => "lhs not proportional to phi(C_n)".to_string(),
    };
    check.notes.push(note);
    if let Some(r) = &check.ratio {
        check.notes.push(format!("lhs = {r} * rhs"));
    }
    check.runtime = started.elapsed();
    Ok(check)
}

/// `sum_i K_i sum_k (-1)^k / (n-i)! K_1^k s(n-i, k)`.
pub fn conjecture2_lhs(n: usize) -> Result<Polynomial> {
    // sigma_sum divides by k!; the weight restores it and divides by (n-i)!
    sigma_sum(n, |k, m| {
        Ok(rat_int(stirling_first(m, k) * factorial(k as u32)) / rat_int(factorial(m as u32)))
    })
}

/// `0` for odd `n`; `(-1)^m C(x, m)` for `n = 2m`.
pub fn conjecture2_rhs(n: usize) -> Polynomial {
    if n % 2 == 1 {
        return Polynomial::zero();
    }
    let m = n / 2;
    let b = binom_poly(Variable::X, m as u32);
    if m % 2 == 1 {
        -b
    } else {
        b
    }
}

pub fn conjecture2(n: usize) -> Result<ConjectureCheck> {
    check_n(n, 2, "conjecture 2")?;
    let started = Instant::now();
    let lhs = conjecture2_lhs(n)?;
    let mut check = ConjectureCheck::new("conjecture2", n, lhs, conjecture2_rhs(n), started);
    if let Some(r) = &check.ratio {
        check.notes.push(format!("lhs = {r} * rhs"));
    }
    Ok(check)
}

/// `I_n = 1/2 sum_{i=0}^{2n} (-1)^i C(2n, i) x_i x_{2n-i}`, checked to lie in
/// the Weitzenböck kernel.
pub fn i_element(n: usize) -> Result<Polynomial> {
    check_n(n, 1, "I_n")?;
    let top = 2 * n;
    let mut p = Polynomial::zero();
    for i in 0..=top {
        let c = rat_int(crate::arith::binomial(top as i64, i as i64)?) * rat(if i % 2 == 0 { 1 } else { -1 }, 2);
        p += (&x(i) * &x(top - i)).scale(&c);
    }
    let w = Derivation::build(DerivationKind::Weitzenbock, top)?;
    if !w.is_in_kernel(&p)? {
        return Err(Error::CheckFailed(format!("I_{n} is not in the Weitzenböck kernel")));
    }
    Ok(p)
}

/// The `(n+1) x (n+1)` Hankel matrix `[x_{i+j}]` over `x_0..x_{2n}`.
pub fn hankel(n: usize) -> Result<Matrix> {
    check_n(n, 1, "hankel")?;
    Ok((0..=n).map(|i| (0..=n).map(|j| x(i + j)).collect()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conjecture3Part {
    /// `psi_AK1`, right side in `a`.
    I,
    /// `psi_AK2`, right side in `x`.
    Ii,
}

impl Conjecture3Part {
    pub fn psi(self) -> PsiKind {
        match self {
            Conjecture3Part::I => PsiKind::Ak1,
            Conjecture3Part::Ii => PsiKind::Ak2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Conjecture3Part::I => "i",
            Conjecture3Part::Ii => "ii",
        }
    }
}

/// How the product ranges of the conjectured right side are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conjecture3Reading {
    /// Ranges exactly as printed.
    Literal,
    /// Part (ii) with the factorial product stopping at `n - 1`, like part (i).
    UpperNMinus1,
    /// Ranges shifted by one so they fit an `(n+1) x (n+1)` matrix; the sign
    /// exponent is unchanged.
    MatrixSize,
}

impl Conjecture3Reading {
    pub fn label(self) -> &'static str {
        match self {
            Conjecture3Reading::Literal => "literal",
            Conjecture3Reading::UpperNMinus1 => "upper-n-1",
            Conjecture3Reading::MatrixSize => "matrix-size",
        }
    }

    pub fn for_part(part: Conjecture3Part) -> &'static [Conjecture3Reading] {
        match part {
            Conjecture3Part::I => &[Conjecture3Reading::Literal, Conjecture3Reading::MatrixSize],
            Conjecture3Part::Ii => &[
                Conjecture3Reading::Literal,
                Conjecture3Reading::UpperNMinus1,
                Conjecture3Reading::MatrixSize,
            ],
        }
    }
}

/// `(-1)^{n(n+1)/2} prod_{i=0}^{f} w^i i! prod_{i=0}^{l-1} L_i^{l-i}`, with
/// `w = 1, L_i = a + i` for part (i) and `w = 2, L_i = x - i` for part (ii).
pub fn conjecture3_rhs(part: Conjecture3Part, reading: Conjecture3Reading, n: usize) -> Result<Polynomial> {
    check_n(n, 1, "conjecture 3")?;
    let (f, l) = match (part, reading) {
        (Conjecture3Part::I, Conjecture3Reading::Literal) => (n as i64 - 1, n - 1),
        (Conjecture3Part::I, Conjecture3Reading::MatrixSize) => (n as i64, n),
        (Conjecture3Part::Ii, Conjecture3Reading::Literal) => (n as i64, n - 1),
        (Conjecture3Part::Ii, Conjecture3Reading::UpperNMinus1) => (n as i64 - 1, n - 1),
        (Conjecture3Part::Ii, Conjecture3Reading::MatrixSize) => (n as i64, n),
        (Conjecture3Part::I, Conjecture3Reading::UpperNMinus1) => {
            return Err(Error::Domain("part (i) has no upper-n-1 reading".into()))
        }
    };
    let mut scalar = rat_int(if (n * (n + 1) / 2).is_multiple_of(2) { 1 } else { -1 });
    for i in 0..=f.max(-1) {
        let i = i as u32;
        scalar *= rat_int(factorial(i));
        if part == Conjecture3Part::Ii {
            scalar *= rat_int(num_traits::pow(crate::arith::int(2), i as usize));
        }
    }
    let mut p = Polynomial::constant(scalar);
    for i in 0..l {
        let base = match part {
            Conjecture3Part::I => var_a() + Polynomial::int(i as i64),
            Conjecture3Part::Ii => var_x() - Polynomial::int(i as i64),
        };
        p = &p * &base.pow((l - i) as u32);
    }
    Ok(p)
}

/// `phi_K(psi(x_m)) = sum_i c(m, i) K_i`.
fn phi_psi_generator(kind: PsiKind, m: usize) -> Result<Polynomial> {
    if m == 0 {
        return Ok(kravchuk(0));
    }
    let mut p = Polynomial::zero();
    for i in 1..=m {
        let c = match kind {
            PsiKind::Ak1 => t_coeff(m, i)?,
            PsiKind::Ak2 => b_coeff(m, i)?,
        };
        if !c.is_zero() {
            p += kravchuk(i).scale(&rat_int(c));
        }
    }
    Ok(p)
}

/// `phi_K(psi(det H_n))` as the determinant of the entrywise image, which
/// agrees with the direct route because both maps are ring homomorphisms.
pub fn conjecture3_lhs(kind: PsiKind, n: usize) -> Result<Polynomial> {
    check_n(n, 1, "conjecture 3")?;
    let entries: Vec<Polynomial> = (0..=2 * n).map(|m| phi_psi_generator(kind, m)).collect::<Result<_>>()?;
    let m: Matrix = (0..=n).map(|i| (0..=n).map(|j| entries[i + j].clone()).collect()).collect();
    determinant(&m)
}

/// `phi_K(psi(det H_n))` evaluated in that order.
pub fn conjecture3_lhs_direct(kind: PsiKind, n: usize) -> Result<Polynomial> {
    let det = determinant(&hankel(n)?)?;
    let psi = build_psi(kind, 2 * n)?;
    phi_k(&psi.apply(&det)?, 2 * n)
}

/// One check per part and reading, in a fixed order.
pub fn conjecture3(n: usize) -> Result<Vec<ConjectureCheck>> {
    check_n(n, 1, "conjecture 3")?;
    let mut out = Vec::new();
    for part in [Conjecture3Part::I, Conjecture3Part::Ii] {
        let started = Instant::now();
        let lhs = conjecture3_lhs(part.psi(), n)?;
        let lhs_time = started.elapsed();
        for &reading in Conjecture3Reading::for_part(part) {
            let started = Instant::now();
            let rhs = conjecture3_rhs(part, reading, n)?;
            let id = format!("conjecture3.{}.{}", part.label(), reading.label());
            let mut check = ConjectureCheck::new(id, n, lhs.clone(), rhs, started);
            check.runtime += lhs_time;
            if let Some(r) = &check.ratio {
                if check.verdict == Verdict::Refuted {
                    check.notes.push(format!("lhs = {r} * rhs"));
                }
            }
            out.push(check);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conjecture {
    One,
    Two,
    Three,
}

impl Conjecture {
    pub fn from_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(Conjecture::One),
            2 => Some(Conjecture::Two),
            3 => Some(Conjecture::Three),
            _ => None,
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Conjecture::One | Conjecture::Two => 2,
            Conjecture::Three => 1,
        }
    }

    pub fn check(self, n: usize) -> Result<Vec<ConjectureCheck>> {
        match self {
            Conjecture::One => Ok(vec![conjecture1(n)?]),
            Conjecture::Two => Ok(vec![conjecture2(n)?]),
            Conjecture::Three => conjecture3(n),
        }
    }
}

/// Checks for `min_n..=max_n`, computed in parallel and returned ordered by
/// `n` (then by check id order within `n`).
pub fn sweep(conjecture: Conjecture, max_n: usize) -> Result<Vec<ConjectureCheck>> {
    let ns: Vec<usize> = (conjecture.min_n()..=max_n).collect();
    let nested: Vec<Vec<ConjectureCheck>> = ns.par_iter().map(|&n| conjecture.check(n)).collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// `27 (6 x0 x1 x2 x3 + 3 x1^2 x2^2 - 4 x1^3 x3 - 4 x2^3 x0 - x0^2 x3^2)`.
pub fn discriminant_expansion() -> Polynomial {
    let t = |c: i64, p: Polynomial| p.scale(&rat(c, 1));
    let inner = t(6, &(&x(0) * &x(1)) * &(&x(2) * &x(3)))
        + t(3, &x(1).pow(2) * &x(2).pow(2))
        - t(4, &x(1).pow(3) * &x(3))
        - t(4, &x(2).pow(3) * &x(0))
        - &x(0).pow(2) * &x(3).pow(2);
    t(27, inner)
}

/// The 5x5 matrix in `x_0..x_3` whose determinant is displayed next to the
/// discriminant expansion.
pub fn discriminant_matrix() -> Matrix {
    let t = |c: i64, i: usize| x(i).scale(&rat(c, 1));
    let z = Polynomial::zero;
    vec![
        vec![x(0), t(3, 1), t(3, 2), x(3), z()],
        vec![z(), x(0), t(3, 1), t(3, 2), x(3)],
        vec![t(3, 0), t(6, 1), t(3, 2), z(), z()],
        vec![z(), t(3, 0), t(6, 1), t(3, 2), z()],
        vec![z(), z(), t(3, 0), t(6, 1), t(3, 2)],
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantReport {
    pub raw_determinant: Polynomial,
    pub displayed_expansion: Polynomial,
    /// `raw_determinant / displayed_expansion` when the division is exact.
    pub raw_cofactor: Option<Polynomial>,
    /// Determinant of the matrix with `psi_AK1` images as entries.
    pub psi_determinant: Polynomial,
    pub psi_in_kernel: bool,
    pub image: Polynomial,
    pub expected_image: Polynomial,
    /// `phi_K(psi_AK1(displayed_expansion))`.
    pub expansion_image: Polynomial,
}

impl DiscriminantReport {
    pub fn raw_matches(&self) -> bool {
        self.raw_determinant == self.displayed_expansion
    }

    pub fn image_matches(&self) -> bool {
        self.image == self.expected_image
    }

    pub fn verdict(&self) -> Verdict {
        if self.raw_matches() && self.psi_in_kernel && self.image_matches() {
            Verdict::Verified
        } else {
            Verdict::Refuted
        }
    }
}

pub fn discriminant_identity() -> Result<DiscriminantReport> {
    let raw = discriminant_matrix();
    let raw_determinant = determinant(&raw)?;
    let displayed_expansion = discriminant_expansion();
    let psi = build_psi(PsiKind::Ak1, 3)?;
    let mapped: Matrix = raw.iter().map(|row| row.iter().map(|e| psi.apply(e)).collect()).collect::<Result<_>>()?;
    let psi_determinant = determinant(&mapped)?;
    let dk1 = Derivation::build(DerivationKind::Kravchuk1, 3)?;
    Ok(DiscriminantReport {
        raw_cofactor: raw_determinant.div_exact(&displayed_expansion),
        psi_in_kernel: dk1.is_in_kernel(&psi_determinant)?,
        image: phi_k(&psi_determinant, 3)?,
        expected_image: var_a().pow(3).scale(&rat(108, 1)),
        expansion_image: phi_k(&psi.apply(&displayed_expansion)?, 3)?,
        raw_determinant,
        displayed_expansion,
        psi_determinant,
    })
}

/// All monomials of total degree `1..=max_degree` in `x_0..x_max_index`.
pub fn monomials_up_to(max_index: usize, max_degree: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let mut frontier = vec![(Monomial::one(), 0usize)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (m, lowest) in &frontier {
            for i in *lowest..=max_index {
                let grown = m.mul(&Monomial::var(Variable::Indexed(i as u32)));
                out.push(Polynomial::term(Rational::one(), grown.clone()));
                next.push((grown, i));
            }
        }
        frontier = next;
    }
    out
}

/// The single `c` with `phi_K(D(p)) = c * d/dv phi_K(p)` on every test
/// monomial, where `v = x` for the first Kravchuk derivation and `v = a` for
/// the second. `None` if no single constant works.
pub fn phi_derivation_constant(kind: DerivationKind, max_index: usize, max_degree: u32) -> Result<Option<Rational>> {
    let v = match kind {
        DerivationKind::Kravchuk1 => Variable::X,
        DerivationKind::Kravchuk2 => Variable::A,
        DerivationKind::Weitzenbock => {
            return Err(Error::Domain("the Weitzenböck derivation has no Kravchuk counterpart".into()))
        }
    };
    let d = Derivation::build(kind, max_index)?;
    let mut constant: Option<Rational> = None;
    for m in monomials_up_to(max_index, max_degree) {
        let lhs = phi_k(&d.apply(&m)?, max_index)?;
        let rhs = phi_k(&m, max_index)?.partial_derivative(v);
        if rhs.is_zero() {
            if !lhs.is_zero() {
                return Ok(None);
            }
            continue;
        }
        match (lhs.ratio_to(&rhs), &constant) {
            (None, _) => return Ok(None),
            (Some(r), Some(c)) if &r != c => return Ok(None),
            (Some(r), None) => constant = Some(r),
            _ => {}
        }
    }
    Ok(constant)
}

/// `phi_K(sigma(x_n))` for the second Kravchuk derivation.
pub fn sigma_k2_image(n: usize) -> Result<Polynomial> {
    let c = cayley_k2(n)?;
    Ok(phi_k(&c.numerator, n)?.scale(&c.scalar))
}
