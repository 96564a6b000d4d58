//! Real root isolation with Sturm sequences and exact recovery of
//! rational and quadratic-surd roots.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::exactnum::Surd;

#[derive(Debug, Clone)]
pub struct RootOptions {
    /// Width of the final isolating interval.
    pub tol: f64,
    /// Try to recognise rational and surd roots.
    pub exact: bool,
    /// Radicands to try when recognising surd roots.
    pub radicands: Vec<BigInt>,
    /// Largest denominator (in bits) accepted for a recognised root.
    pub max_denominator_bits: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-12,
            exact: true,
            radicands: Vec::new(),
            max_denominator_bits: 64,
        }
    }
}

impl RootOptions {
    pub fn with_tol(tol: f64) -> Self {
        RootOptions { tol, ..Self::default() }
    }

    pub fn approximate(tol: f64) -> Self {
        RootOptions { tol, exact: false, ..Self::default() }
    }
}

/// A real root isolated in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealRoot {
    pub lo: Rational,
    pub hi: Rational,
    pub exact: Option<Surd>,
    pub multiplicity: usize,
}

impl RealRoot {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    /// Exact value when known, otherwise the interval midpoint.
    pub fn value(&self) -> Surd {
        self.exact
            .clone()
            .unwrap_or_else(|| Surd::from_rational(self.midpoint()))
    }

    pub fn approx(&self) -> f64 {
        match &self.exact {
            Some(x) => x.to_f64(),
            None => rational::to_f64(&self.midpoint()),
        }
    }
}

fn eval_at(p: &UniPoly<Surd>, x: &Rational) -> Surd {
    p.eval(&Surd::from_rational(x.clone()))
}

/// Sturm sequence `f, f', -rem(...)`, each member scaled to a unit leading coefficient.
pub fn sturm_chain(p: &UniPoly<Surd>) -> Vec<UniPoly<Surd>> {
    let norm = |q: UniPoly<Surd>| match q.lead() {
        Some(l) => {
            let k = l.abs().recip().expect("non-zero leading coefficient");
            q.scale(&k)
        }
        None => q,
    };
    let mut chain = vec![norm(p.clone())];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(norm(d));
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(norm(r.neg()));
    }
    chain
}

pub fn sign_variations(chain: &[UniPoly<Surd>], x: &Rational) -> usize {
    let mut last = 0;
    let mut count = 0;
    for q in chain {
        let s = eval_at(q, x).signum();
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Distinct roots in `(a, b]`, assuming `a` is not a root.
pub fn count_roots(chain: &[UniPoly<Surd>], a: &Rational, b: &Rational) -> usize {
    sign_variations(chain, a).saturating_sub(sign_variations(chain, b))
}

fn abs_upper(x: &Surd) -> Rational {
    let r = Rational::from_integer(x.radicand().clone());
    let root_up = rational::sqrt_approx(&r, 8) + Rational::new(BigInt::one(), BigInt::from(256));
    x.rational_part().abs() + x.surd_coeff().abs() * root_up
}

/// A bound `B` with every real root strictly inside `(-B, B)`.
pub fn cauchy_bound(p: &UniPoly<Surd>) -> Rational {
    let lead = p.lead().expect("non-zero polynomial");
    let inv = abs_upper(&lead.recip().expect("non-zero leading coefficient"));
    let n = p.coeffs().len() - 1;
    let m = p.coeffs()[..n]
        .iter()
        .map(abs_upper)
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + m * inv
}

/// Real roots with multiplicities, sorted ascending.
pub fn real_roots(p: &UniPoly<Surd>, opts: &RootOptions) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("real roots of the zero polynomial".into()));
    }
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(Error::InvalidInput(format!("root tolerance {}", opts.tol)));
    }
    let mut out = Vec::new();
    for (factor, mult) in p.square_free() {
        for mut root in squarefree_roots(&factor, opts)? {
            root.multiplicity = mult;
            out.push(root);
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

fn squarefree_roots(f: &UniPoly<Surd>, opts: &RootOptions) -> Result<Vec<RealRoot>> {
    let chain = sturm_chain(f);
    let b = cauchy_bound(f);
    let a = -b.clone();
    let mut isolated = Vec::new();
    let mut stack = vec![(a.clone(), b.clone(), count_roots(&chain, &a, &b))];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let m = split_point(f, &lo, &hi);
                let left = count_roots(&chain, &lo, &m);
                stack.push((m.clone(), hi, n - left));
                stack.push((lo, m, left));
            }
        }
    }
    let tol = rational::from_f64(opts.tol)?;
    let fine = if opts.exact {
        let t = Rational::new(BigInt::one(), BigInt::one() << 100usize);
        if t < tol {
            t
        } else {
            tol.clone()
        }
    } else {
        tol.clone()
    };
    let mut roots: Vec<RealRoot> = isolated
        .into_iter()
        .map(|(lo, hi)| refine(f, lo, hi, &fine))
        .collect();
    if opts.exact {
        recognise(f, &mut roots, opts)?;
    }
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(roots)
}

fn split_point(f: &UniPoly<Surd>, lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    let mut m = lo + &w / rational::int(2);
    let mut k = 3u32;
    while eval_at(f, &m).is_zero() {
        m = lo + &w * (Rational::new(BigInt::one(), BigInt::from(2)) + Rational::new(BigInt::one(), BigInt::one() << k as usize));
        k += 1;
    }
    m
}

/// Bisects `(lo, hi]` (one root, `f(lo) != 0`) down to width `tol`.
fn refine(f: &UniPoly<Surd>, lo: Rational, hi: Rational, tol: &Rational) -> RealRoot {
    let mut lo = lo;
    let mut hi = hi;
    let sa = eval_at(f, &lo).signum();
    let done = |x: Rational| RealRoot {
        lo: x.clone(),
        hi: x.clone(),
        exact: Some(Surd::from_rational(x)),
        multiplicity: 1,
    };
    if eval_at(f, &hi).is_zero() {
        return done(hi);
    }
    let two = rational::int(2);
    while &(&hi - &lo) > tol {
        let m = (&lo + &hi) / &two;
        let s = eval_at(f, &m).signum();
        if s == 0 {
            return done(m);
        }
        if s == sa {
            lo = m;
        } else {
            hi = m;
        }
    }
    RealRoot { lo, hi, exact: None, multiplicity: 1 }
}

fn small_denominator(x: &Rational, bits: u64) -> bool {
    x.denom().bits() <= bits
}

fn recognise(f: &UniPoly<Surd>, roots: &mut [RealRoot], opts: &RootOptions) -> Result<()> {
    for r in roots.iter_mut().filter(|r| r.exact.is_none()) {
        let q = rational::simplest_between(&r.lo, &r.hi);
        if small_denominator(&q, opts.max_denominator_bits) && eval_at(f, &q).is_zero() {
            r.exact = Some(Surd::from_rational(q));
        }
    }
    if roots.iter().all(|r| r.exact.is_some()) {
        return Ok(());
    }
    let field = f
        .coeffs()
        .iter()
        .find(|c| !c.is_rational())
        .map(|c| c.radicand().clone());
    match field {
        None => {
            for r in &opts.radicands {
                if !r.is_one() && r.is_positive() {
                    recognise_pairs(f, roots, r, opts);
                }
            }
        }
        Some(r) => {
            // roots in Q(sqrt r) of f are paired roots of f * conj(f)
            let conj = UniPoly::new(f.var(), f.coeffs().iter().map(Surd::conj).collect());
            let g = f.mul(&conj);
            let inner = RootOptions {
                radicands: vec![r],
                ..opts.clone()
            };
            let candidates = real_roots(&g, &inner)?;
            for root in roots.iter_mut().filter(|x| x.exact.is_none()) {
                for c in candidates.iter().filter_map(|c| c.exact.as_ref()) {
                    let inside = c.try_cmp(&Surd::from_rational(root.lo.clone()))?.is_ge()
                        && c.try_cmp(&Surd::from_rational(root.hi.clone()))?.is_le();
                    if inside && f.eval(c).is_zero() {
                        root.exact = Some(c.clone());
                        break;
                    }
                }
            }
        }
    }
    Ok(())
}

fn recognise_pairs(f: &UniPoly<Surd>, roots: &mut [RealRoot], radicand: &BigInt, opts: &RootOptions) {
    let rr = Rational::from_integer(radicand.clone());
    let s_lo = rational::sqrt_approx(&rr, 128);
    let s_hi = &s_lo + Rational::new(BigInt::one(), BigInt::one() << 128usize);
    let two = rational::int(2);
    let open: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].exact.is_none()).collect();
    for (k, &i) in open.iter().enumerate() {
        for &j in &open[k + 1..] {
            if roots[i].exact.is_some() || roots[j].exact.is_some() {
                continue;
            }
            let (xi, xj) = (&roots[i], &roots[j]);
            let a_lo = (&xi.lo + &xj.lo) / &two;
            let a_hi = (&xi.hi + &xj.hi) / &two;
            let d_lo = &xj.lo - &xi.hi;
            let d_hi = &xj.hi - &xi.lo;
            if !d_lo.is_positive() {
                continue;
            }
            let b_lo = &d_lo / (&two * &s_hi);
            let b_hi = &d_hi / (&two * &s_lo);
            let a = rational::simplest_between(&a_lo, &a_hi);
            let b = rational::simplest_between(&b_lo, &b_hi);
            if !small_denominator(&a, opts.max_denominator_bits)
                || !small_denominator(&b, opts.max_denominator_bits)
            {
                continue;
            }
            let Ok(low) = Surd::new(a.clone(), -b.clone(), &rr) else {
                continue;
            };
            if low.is_rational() || !f.eval(&low).is_zero() {
                continue;
            }
            let high = low.conj();
            roots[i].exact = Some(low);
            roots[j].exact = Some(high);
        }
    }
}
