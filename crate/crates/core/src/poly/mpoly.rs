use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Coeff, Monomial, PolyError};

/// Sparse multivariate polynomial.
///
/// Terms are kept strictly descending in grevlex order with no zero
/// coefficients, so the representation is canonical for a given variable
/// list. Polynomials over different variable lists are aligned to the union
/// of their variables by every binary operation.
#[derive(Clone, Debug)]
pub struct MPoly<C> {
    vars: Arc<[String]>,
    terms: Vec<(Monomial, C)>,
}

pub fn var_list(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect()
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MPoly { vars, terms: Vec::new() }
    }

    pub fn one(vars: Arc<[String]>) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn constant(vars: Arc<[String]>, c: C) -> Self {
        let n = vars.len();
        Self::from_terms(vars, [(Monomial::one(n), c)])
    }

    /// The variable `name`, which must be in `vars`.
    pub fn var(vars: Arc<[String]>, name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("variable {name} not in {vars:?}"));
        Self::var_idx(vars, idx)
    }

    pub(crate) fn var_idx(vars: Arc<[String]>, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        MPoly { vars, terms: vec![(Monomial::new(e), C::one())] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms(vars: Arc<[String]>, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length mismatch");
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.clone() + c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { vars, terms }
    }

    /// Trusted constructor: `terms` already sorted descending and nonzero.
    fn from_sorted(vars: Arc<[String]>, terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_arc(&self) -> Arc<[String]> {
        self.vars.clone()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> C {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => C::zero(),
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        self.var_index(name).map(|i| self.degree_idx(i)).unwrap_or(0)
    }

    pub(crate) fn degree_idx(&self, idx: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[idx]).max().unwrap_or(0)
    }

    /// Indices of variables that occur with a positive exponent.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .collect()
    }

    pub fn used_var_names(&self) -> Vec<&str> {
        self.used_vars().into_iter().map(|i| self.vars[i].as_str()).collect()
    }

    pub fn coeff_of(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    /// Re-expresses the polynomial over `vars`, which must contain every used
    /// variable of `self`.
    pub fn with_vars(&self, vars: Arc<[String]>) -> Result<Self, PolyError> {
        if *vars == *self.vars {
            return Ok(MPoly { vars, terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let target = vars.iter().position(|w| w == v);
            if target.is_none() && self.terms.iter().any(|(m, _)| m.0[i] > 0) {
                return Err(PolyError::UnknownVariable(v.clone()));
            }
            map.push(target);
        }
        let n = vars.len();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, t) in map.iter().enumerate() {
                if let Some(t) = t {
                    e[*t] += m.0[i];
                }
            }
            (Monomial::new(e), c.clone())
        });
        Ok(Self::from_terms(vars, terms))
    }

    /// Drops variables that do not occur.
    pub fn compact(&self) -> Self {
        let used: Vec<&str> = self.used_var_names();
        self.with_vars(var_list(&used)).expect("used variables are kept")
    }

    /// Brings two polynomials onto a common variable list (the union, in
    /// first-seen order).
    pub fn align(a: &Self, b: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&a.vars, &b.vars) || *a.vars == *b.vars {
            return (a.clone(), MPoly { vars: a.vars.clone(), terms: b.terms.clone() });
        }
        let mut names: Vec<String> = a.vars.to_vec();
        for v in b.vars.iter() {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
        let vars: Arc<[String]> = names.into();
        (
            a.with_vars(vars.clone()).expect("superset"),
            b.with_vars(vars).expect("superset"),
        )
    }

    fn same_vars(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect();
        Self::from_sorted(self.vars.clone(), terms)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(self.vars.clone(), self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        if !self.same_vars(other) {
            let (a, b) = Self::align(self, other);
            return a.add_impl(&b, negate_other);
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &C| if negate_other { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.clone() + sign(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Self::from_sorted(self.vars.clone(), out)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if !self.same_vars(other) {
            let (a, b) = Self::align(self, other);
            return a.mul_impl(&b);
        }
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let n = self.vars.len();
        let max_deg = self.total_degree() as u64 + other.total_degree() as u64;
        if n <= 4 && max_deg < (1 << 16) {
            // pack exponents into a u64 key
            let pack = |m: &Monomial| m.0.iter().fold(0u64, |acc, &e| (acc << 16) | e as u64);
            let a: Vec<(u64, &C)> = self.terms.iter().map(|(m, c)| (pack(m), c)).collect();
            let b: Vec<(u64, &C)> = other.terms.iter().map(|(m, c)| (pack(m), c)).collect();
            let mut acc: HashMap<u64, C> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
            for (ka, ca) in &a {
                for (kb, cb) in &b {
                    let prod = (*ca).clone() * (*cb).clone();
                    match acc.get_mut(&(ka + kb)) {
                        Some(v) => *v = std::mem::replace(v, C::zero()) + prod,
                        None => {
                            acc.insert(ka + kb, prod);
                        }
                    }
                }
            }
            let unpack = |mut k: u64| {
                let mut e = vec![0u32; n];
                for slot in e.iter_mut().rev() {
                    *slot = (k & 0xffff) as u32;
                    k >>= 16;
                }
                Monomial::new(e)
            };
            let mut terms: Vec<(Monomial, C)> =
                acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (unpack(k), c)).collect();
            terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
            return Self::from_sorted(self.vars.clone(), terms);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca.clone() * cb.clone();
                match acc.get_mut(&ma.mul(mb)) {
                    Some(v) => *v = std::mem::replace(v, C::zero()) + prod,
                    None => {
                        acc.insert(ma.mul(mb), prod);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
        Self::from_sorted(self.vars.clone(), terms)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative; zero if `name` is not a variable.
    pub fn derivative(&self, name: &str) -> Self {
        match self.var_index(name) {
            Some(i) => self.derivative_idx(i),
            None => Self::zero(self.vars.clone()),
        }
    }

    pub(crate) fn derivative_idx(&self, idx: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[idx] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[idx];
            e[idx] -= 1;
            (Monomial::new(e), c.clone() * C::from_u32(k).expect("exponent fits"))
        });
        Self::from_terms(self.vars.clone(), terms)
    }

    /// Substitutes values for some variables. The variable list is kept; the
    /// substituted variables simply no longer occur.
    pub fn evaluate(&self, assignment: &[(&str, C)]) -> Self {
        let idx: Vec<(usize, C)> = assignment
            .iter()
            .filter_map(|(name, v)| self.var_index(name).map(|i| (i, v.clone())))
            .collect();
        self.evaluate_idx(&idx)
    }

    pub(crate) fn evaluate_idx(&self, assignment: &[(usize, C)]) -> Self {
        if assignment.is_empty() {
            return self.clone();
        }
        let mut pow_cache: Vec<Vec<C>> = assignment.iter().map(|_| vec![C::one()]).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let mut coeff = c.clone();
            for (k, (i, v)) in assignment.iter().enumerate() {
                let p = e[*i] as usize;
                let cache = &mut pow_cache[k];
                while cache.len() <= p {
                    let next = cache.last().expect("nonempty").clone() * v.clone();
                    cache.push(next);
                }
                coeff = coeff * cache[p].clone();
                e[*i] = 0;
            }
            terms.push((Monomial::new(e), coeff));
        }
        Self::from_terms(self.vars.clone(), terms)
    }

    /// Evaluates at a full point given in variable order.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.vars.len(), "point dimension mismatch");
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * v.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Replaces variable `name` by the polynomial `value`.
    pub fn substitute(&self, name: &str, value: &Self) -> Self {
        let Some(_) = self.var_index(name) else {
            return self.clone();
        };
        let (me, value) = Self::align(self, value);
        let idx = me.var_index(name).expect("aligned");
        let coeffs = me.coeffs_idx(idx);
        // Horner in the substituted variable
        let mut acc = Self::zero(me.vars.clone());
        for c in coeffs.iter().rev() {
            acc = &(&acc * &value) + c;
        }
        acc
    }

    /// Coefficients of `self` as a polynomial in `name`: entry `k` multiplies
    /// `name^k`. The coefficients keep the full variable list.
    pub fn coeffs_in(&self, name: &str) -> Vec<Self> {
        match self.var_index(name) {
            Some(i) => self.coeffs_idx(i),
            None => vec![self.clone()],
        }
    }

    pub(crate) fn coeffs_idx(&self, idx: usize) -> Vec<Self> {
        let deg = self.degree_idx(idx) as usize;
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[idx] as usize;
            e[idx] = 0;
            buckets[k].push((Monomial::new(e), c.clone()));
        }
        // removing one variable keeps grevlex order among the rest only up to
        // ties, so re-sort
        buckets.into_iter().map(|b| Self::from_terms(self.vars.clone(), b)).collect()
    }

    pub(crate) fn from_coeffs_idx(vars: Arc<[String]>, idx: usize, coeffs: &[Self]) -> Self {
        let terms = coeffs.iter().enumerate().flat_map(|(k, c)| {
            c.terms.iter().map(move |(m, x)| {
                let mut e = m.0.clone();
                e[idx] += k as u32;
                (Monomial::new(e), x.clone())
            })
        });
        Self::from_terms(vars, terms)
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(vars: Arc<[String]>, name: &str, coeffs: &[Self]) -> Self {
        let idx = vars.iter().position(|v| v == name).expect("variable present");
        let coeffs: Vec<Self> = coeffs
            .iter()
            .map(|c| c.with_vars(vars.clone()).expect("coefficient variables"))
            .collect();
        Self::from_coeffs_idx(vars, idx, &coeffs)
    }

    /// Exact quotient `self / d`.
    ///
    /// Runs multivariate division by the single divisor `d`; any term that the
    /// leading term of `d` cannot absorb means a nonzero remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self, PolyError> {
        if !self.same_vars(d) {
            let (a, b) = Self::align(self, d);
            return a.exact_div(&b);
        }
        let Some((lm, lc)) = d.terms.first() else {
            return Err(PolyError::DivByZero);
        };
        if self.is_zero() {
            return Ok(Self::zero(self.vars.clone()));
        }
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let qm = m.div(lm).ok_or(PolyError::NotDivisible)?;
                let qc = c.div_exact(lc).ok_or(PolyError::NotDivisible)?;
                out.push((qm, qc));
            }
            return Ok(Self::from_sorted(self.vars.clone(), out));
        }
        let mut rem: BTreeMap<Monomial, C> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lm).ok_or(PolyError::NotDivisible)?;
            let qc = c.div_exact(lc).ok_or(PolyError::NotDivisible)?;
            for (dm, dc) in &d.terms[1..] {
                let key = dm.mul(&qm);
                let sub = qc.clone() * dc.clone();
                match rem.get_mut(&key) {
                    Some(v) => {
                        let nv = std::mem::replace(v, C::zero()) - sub;
                        if nv.is_zero() {
                            rem.remove(&key);
                        } else {
                            *v = nv;
                        }
                    }
                    None => {
                        rem.insert(key, -sub);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Ok(Self::from_sorted(self.vars.clone(), quot))
    }
}

impl<C: Coeff> PartialEq for MPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.same_vars(other) {
            return self.terms == other.terms;
        }
        let (a, b) = Self::align(self, other);
        a.terms == b.terms
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<C: Coeff> $trait<&MPoly<C>> for &MPoly<C> {
            type Output = MPoly<C>;
            fn $method(self, rhs: &MPoly<C>) -> MPoly<C> {
                let f: fn(&MPoly<C>, &MPoly<C>) -> MPoly<C> = $body;
                f(self, rhs)
            }
        }
        impl<C: Coeff> $trait<MPoly<C>> for MPoly<C> {
            type Output = MPoly<C>;
            fn $method(self, rhs: MPoly<C>) -> MPoly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coeff> $trait<&MPoly<C>> for MPoly<C> {
            type Output = MPoly<C>;
            fn $method(self, rhs: &MPoly<C>) -> MPoly<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Coeff> $trait<MPoly<C>> for &MPoly<C> {
            type Output = MPoly<C>;
            fn $method(self, rhs: MPoly<C>) -> MPoly<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        MPoly::from_sorted(self.vars.clone(), terms)
    }
}

impl<C: Coeff> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        -&self
    }
}
