//! Character-theoretic verification engine.
//!
//! Compact groups are described by a [`GroupType`]: family `A` of rank `q`
//! is `U(q)`, `B` of rank `r` is `SO(2r+1)`, `C` is `Sp(2r)` and `D` is
//! `SO(2r)`. All weights handled here are integral and stored as plain
//! integer vectors.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::partitions::{lr_coefficient, Partition};
use crate::weights::{spin_norm, Family, GroupType, Weight};

pub type IVec = Vec<i64>;

/// Positive roots in the standard realisation.
pub fn positive_roots(t: GroupType) -> Vec<IVec> {
    let n = t.rank;
    let unit = |i: usize, s: i64, j: Option<(usize, i64)>| {
        let mut v = vec![0; n];
        v[i] += s;
        if let Some((j, sj)) = j {
            v[j] += sj;
        }
        v
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(unit(i, 1, Some((j, -1))));
            if t.family != Family::A {
                out.push(unit(i, 1, Some((j, 1))));
            }
        }
        match t.family {
            Family::B => out.push(unit(i, 1, None)),
            Family::C => out.push(unit(i, 2, None)),
            _ => {}
        }
    }
    out
}

/// `2ρ`, the sum of the positive roots.
pub fn two_rho(t: GroupType) -> IVec {
    let mut s = vec![0; t.rank];
    for a in positive_roots(t) {
        for (x, y) in s.iter_mut().zip(a) {
            *x += y;
        }
    }
    s
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dominant representative of the Weyl orbit.
pub fn dominant_form(t: GroupType, v: &[i64]) -> IVec {
    if t.family == Family::A {
        let mut a = v.to_vec();
        a.sort_unstable_by(|x, y| y.cmp(x));
        return a;
    }
    let mut a: IVec = v.iter().map(|x| x.abs()).collect();
    a.sort_unstable_by(|x, y| y.cmp(x));
    if t.family == Family::D {
        let neg = v.iter().filter(|x| **x < 0).count();
        if let Some(last) = a.last_mut() {
            if neg % 2 == 1 && *last != 0 {
                *last = -*last;
            }
        }
    }
    a
}

pub fn is_dominant(t: GroupType, v: &[i64]) -> bool {
    dominant_form(t, v) == v
}

/// `nu ≼ lam`: `lam − nu` is a nonnegative integral combination of simple
/// roots.
pub fn preceq(t: GroupType, nu: &[i64], lam: &[i64]) -> bool {
    let n = t.rank;
    if n == 0 {
        return true;
    }
    let d: IVec = lam.iter().zip(nu).map(|(a, b)| a - b).collect();
    let mut s = Vec::with_capacity(n);
    let mut acc = 0;
    for x in &d {
        acc += x;
        s.push(acc);
    }
    let nonneg = |c: &[i64]| c.iter().all(|&x| x >= 0);
    match t.family {
        Family::A => s[n - 1] == 0 && nonneg(&s[..n - 1]),
        Family::B => nonneg(&s),
        Family::C => nonneg(&s) && s[n - 1] % 2 == 0,
        Family::D => {
            if n == 1 {
                return d[0] == 0;
            }
            let a = s[n - 2] - d[n - 1];
            let b = s[n - 1];
            nonneg(&s[..n - 2]) && a >= 0 && b >= 0 && a % 2 == 0 && b % 2 == 0
        }
    }
}

/// An element of a Weyl group acting by `v ↦ (s_i · v_{perm(i)})_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i64>,
    pub sign: i64,
}

impl WeylElement {
    pub fn act(&self, v: &[i64]) -> IVec {
        self.perm.iter().zip(&self.signs).map(|(&p, &s)| s * v[p]).collect()
    }
}

/// All elements of the Weyl group together with their signs.
pub fn weyl_group(t: GroupType) -> Vec<WeylElement> {
    use itertools::Itertools;
    let n = t.rank;
    let mut out = Vec::new();
    for perm in (0..n).permutations(n) {
        let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let sign_count = if t.family == Family::A { 0 } else { n };
        for mask in 0u32..(1u32 << sign_count) {
            let neg = mask.count_ones() as usize;
            if t.family == Family::D && neg % 2 == 1 {
                continue;
            }
            let signs = (0..n).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }).collect();
            // Sign changes of B/C have odd length; in D they come in pairs.
            let parity = inv + if t.family == Family::D { 0 } else { neg };
            out.push(WeylElement { perm: perm.clone(), signs, sign: if parity % 2 == 0 { 1 } else { -1 } });
        }
    }
    out
}

/// A finite formal sum of weights.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightMultiset {
    pub entries: BTreeMap<IVec, i64>,
}

impl WeightMultiset {
    pub fn singleton(v: IVec) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(v, 1);
        WeightMultiset { entries }
    }

    pub fn add(&mut self, v: IVec, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.entries.entry(v).or_insert(0);
        *e += m;
        if *e == 0 {
            let key: Vec<IVec> = self.entries.iter().filter(|(_, c)| **c == 0).map(|(k, _)| k.clone()).collect();
            for k in key {
                self.entries.remove(&k);
            }
        }
    }

    pub fn get(&self, v: &[i64]) -> i64 {
        self.entries.get(v).copied().unwrap_or(0)
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Character of the tensor product.
    pub fn convolve(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut out = WeightMultiset::default();
        for (a, ca) in &self.entries {
            for (b, cb) in &other.entries {
                let s: IVec = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add(s, ca * cb);
            }
        }
        out
    }
}

/// The Levi of the induction: `M ∩ K = U(q) × K'` inside `K` of type
/// `family` and rank `q + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LeviShape {
    pub family: Family,
    pub q: usize,
    pub r: usize,
}

impl LeviShape {
    pub fn new(family: Family, q: usize, r: usize) -> Self {
        LeviShape { family, q, r }
    }

    pub fn group(&self) -> GroupType {
        GroupType::new(self.family, self.q + self.r)
    }

    pub fn a_type(&self) -> GroupType {
        GroupType::new(Family::A, self.q)
    }

    pub fn k_prime(&self) -> GroupType {
        GroupType::new(self.family, self.r)
    }

    /// Dimension of the standard representation of `K'`.
    pub fn x(&self) -> usize {
        if self.family == Family::B {
            2 * self.r + 1
        } else {
            2 * self.r
        }
    }

    /// Weights of `n ∩ k`: `e_i ± e_j` across the blocks, and `e_i + e_j`
    /// plus `e_i` (B) or `2e_i` (C) inside the A-block.
    pub fn nk_weights(&self) -> Vec<IVec> {
        let n = self.q + self.r;
        let mut out = Vec::new();
        let put = |pairs: &[(usize, i64)]| {
            let mut v = vec![0; n];
            for &(i, s) in pairs {
                v[i] += s;
            }
            v
        };
        for i in 0..self.q {
            for j in self.q..n {
                out.push(put(&[(i, 1), (j, 1)]));
                out.push(put(&[(i, 1), (j, -1)]));
            }
            if self.family == Family::B {
                out.push(put(&[(i, 1)]));
            }
            for j in i + 1..self.q {
                out.push(put(&[(i, 1), (j, 1)]));
            }
            if self.family == Family::C {
                out.push(put(&[(i, 2)]));
            }
        }
        out
    }

    fn a_degree(&self, v: &[i64]) -> i64 {
        v[..self.q].iter().sum()
    }
}

/// Options for the symmetric-algebra expansion.
fn sym_expand(shape: &LeviShape, m: Option<usize>, a_degree: Option<usize>) -> WeightMultiset {
    let n = shape.q + shape.r;
    let roots = shape.nk_weights();
    let max_deg = a_degree.unwrap_or(usize::MAX);
    let max_m = m.unwrap_or(usize::MAX);
    // State: (number of factors, A-degree) -> weights.
    let mut layers: HashMap<(usize, usize), HashMap<IVec, i64>> = HashMap::new();
    layers.insert((0, 0), HashMap::from([(vec![0; n], 1)]));
    for a in &roots {
        let deg = shape.a_degree(a) as usize;
        let mut next: HashMap<(usize, usize), HashMap<IVec, i64>> = HashMap::new();
        for (&(cnt, d), ws) in &layers {
            for (w, c) in ws {
                let mut k = 0;
                loop {
                    let (nc, nd) = (cnt + k, d + k * deg);
                    if nc > max_m || nd > max_deg {
                        break;
                    }
                    let v: IVec = w.iter().zip(a).map(|(x, y)| x + (k as i64) * y).collect();
                    *next.entry((nc, nd)).or_default().entry(v).or_insert(0) += c;
                    k += 1;
                }
            }
        }
        layers = next;
    }
    let mut out = WeightMultiset::default();
    for ((cnt, d), ws) in layers {
        if m.is_none_or(|m| cnt == m) && a_degree.is_none_or(|a| d == a) {
            for (w, c) in ws {
                out.add(w, c);
            }
        }
    }
    out
}

/// Weights of `S^m(n ∩ k)`.
pub fn sym_power_nk(shape: &LeviShape, m: usize) -> WeightMultiset {
    sym_expand(shape, Some(m), None)
}

/// Weights of `⊕_m S^m(n ∩ k)` whose A-block coordinates sum to `d`.
pub fn sym_algebra_a_degree(shape: &LeviShape, d: usize) -> WeightMultiset {
    sym_expand(shape, None, Some(d))
}

/// One term of the alternating sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlattnerTerm {
    /// `w(μ + ρ) − ρ`.
    pub image: IVec,
    /// Length of `w`, i.e. the cohomological degree.
    pub length: usize,
    /// `Σ_m [σ ⊗ S^m : V_image]`.
    pub multiplicity: i64,
}

/// Outcome of [`Oracle::blattner_multiplicity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlattnerReport {
    pub total: i64,
    /// Contribution of each cohomological degree, before signs.
    pub layers: BTreeMap<usize, i64>,
    pub terms: Vec<BlattnerTerm>,
}

impl BlattnerReport {
    /// Sum of the contributions from positive degrees.
    pub fn higher_layers(&self) -> i64 {
        self.layers.iter().filter(|(i, _)| **i > 0).map(|(_, c)| c.abs()).sum()
    }
}

/// Data certified by [`Oracle::h0_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H0Witness {
    pub k: usize,
    /// `[σ ⊗ S^k(n ∩ k) : V_μ]`.
    pub multiplicity: i64,
    /// `c^{μ_A}_{θ_A, κ}`.
    pub lr_a: u64,
    /// `[V_{θ_O} ⊗ V_κ : V_{μ_O}]` for `K'`.
    pub k_prime_tensor: i64,
    /// `c^{μ_O}_{θ_O, κ}`.
    pub lr_o: u64,
}

/// An occurring K-type found during a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub mu: IVec,
    pub multiplicity: i64,
    pub spin_norm: Rational64,
}

/// Bounded search over K-types of the module induced from `σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiracSearch {
    pub occurrences: Vec<Occurrence>,
    pub bound: Rational64,
    /// Occurring K-types whose spin norm attains the bound.
    pub minimal: Vec<IVec>,
}

impl DiracSearch {
    pub fn inequality_holds(&self) -> bool {
        self.occurrences.iter().all(|o| o.spin_norm >= self.bound)
    }
}

/// Character engine with memoised weight multiplicities.
#[derive(Default)]
pub struct Oracle {
    dominant: HashMap<(GroupType, IVec), HashMap<IVec, i64>>,
    weyl: HashMap<GroupType, Vec<WeylElement>>,
}

impl Oracle {
    pub fn new() -> Self {
        Oracle::default()
    }

    fn weyl(&mut self, t: GroupType) -> &[WeylElement] {
        self.weyl.entry(t).or_insert_with(|| weyl_group(t))
    }

    /// Multiplicities of the dominant weights of `V_lam` (Freudenthal).
    pub fn dominant_multiplicities(&mut self, t: GroupType, lam: &[i64]) -> &HashMap<IVec, i64> {
        let key = (t, lam.to_vec());
        if !self.dominant.contains_key(&key) {
            let m = freudenthal(t, lam);
            self.dominant.insert(key.clone(), m);
        }
        &self.dominant[&key]
    }

    /// Multiplicity of the weight `gamma` in `V_lam`.
    pub fn weight_multiplicity(&mut self, t: GroupType, lam: &[i64], gamma: &[i64]) -> i64 {
        let d = dominant_form(t, gamma);
        self.dominant_multiplicities(t, lam).get(&d).copied().unwrap_or(0)
    }

    /// Full weight multiset of `V_lam`.
    pub fn irrep_weights(&mut self, t: GroupType, lam: &[i64]) -> WeightMultiset {
        let doms: Vec<(IVec, i64)> = self.dominant_multiplicities(t, lam).iter().map(|(k, v)| (k.clone(), *v)).collect();
        let w = self.weyl(t).to_vec();
        let mut out = WeightMultiset::default();
        for (d, m) in doms {
            let orbit: BTreeSet<IVec> = w.iter().map(|e| e.act(&d)).collect();
            for v in orbit {
                out.add(v, m);
            }
        }
        out
    }

    /// `[V_a ⊗ V_b : V_c]` by the Brauer–Klimyk formula.
    pub fn tensor_multiplicity(&mut self, t: GroupType, a: &[i64], b: &[i64], c: &[i64]) -> i64 {
        let r2 = two_rho(t);
        let c2: IVec = c.iter().zip(&r2).map(|(x, y)| 2 * x + y).collect();
        let a2: IVec = a.iter().zip(&r2).map(|(x, y)| 2 * x + y).collect();
        let w = self.weyl(t).to_vec();
        let mut total = 0;
        for e in &w {
            let wc = e.act(&c2);
            let gamma: IVec = wc.iter().zip(&a2).map(|(x, y)| (x - y) / 2).collect();
            total += e.sign * self.weight_multiplicity(t, b, &gamma);
        }
        total
    }

    /// Shifts `(ρ_M − uρ_M, ε(u))` over `u ∈ W(U(q)) × W(K')`.
    fn levi_shifts(&mut self, shape: &LeviShape) -> Vec<(IVec, i64)> {
        let (ta, to) = (shape.a_type(), shape.k_prime());
        let (ra, ro) = (two_rho(ta), two_rho(to));
        let wa = self.weyl(ta).to_vec();
        let wo = self.weyl(to).to_vec();
        let mut out = Vec::with_capacity(wa.len() * wo.len());
        for u in &wa {
            let ua = u.act(&ra);
            for v in &wo {
                let vo = v.act(&ro);
                let mut shift: IVec = ra.iter().zip(&ua).map(|(x, y)| (x - y) / 2).collect();
                shift.extend(ro.iter().zip(&vo).map(|(x, y)| (x - y) / 2));
                out.push((shift, u.sign * v.sign));
            }
        }
        out
    }

    /// `[X : V_nu]` for a virtual `M ∩ K` character given by its weight
    /// multiplicity function.
    fn levi_multiplicity(&mut self, shape: &LeviShape, nu: &[i64], mut chi: impl FnMut(&mut Self, &[i64]) -> i64) -> i64 {
        let shifts = self.levi_shifts(shape);
        let mut total = 0;
        for (s, e) in shifts {
            let g: IVec = nu.iter().zip(&s).map(|(x, y)| x + y).collect();
            let c = chi(self, &g);
            total += e * c;
        }
        total
    }

    /// `[σ ⊗ S : V_nu]` where `σ = V_{θ_A} ⊠ V_{θ_O}`.
    fn sigma_times(&mut self, shape: &LeviShape, theta_a: &[i64], theta_o: &[i64], s: &WeightMultiset, nu: &[i64]) -> i64 {
        let (ta, to) = (shape.a_type(), shape.k_prime());
        let q = shape.q;
        let size_a: i64 = theta_a.iter().sum();
        self.levi_multiplicity(shape, nu, |me, g| {
            let mut acc = 0;
            for (b, cb) in &s.entries {
                let rest: IVec = g.iter().zip(b).map(|(x, y)| x - y).collect();
                if rest[..q].iter().sum::<i64>() != size_a {
                    continue;
                }
                let ma = me.weight_multiplicity(ta, theta_a, &rest[..q]);
                if ma == 0 {
                    continue;
                }
                acc += cb * ma * me.weight_multiplicity(to, theta_o, &rest[q..]);
            }
            acc
        })
    }

    /// The alternating sum over Kostant's cohomology layers. Without
    /// `signed`, only the sign-free `w` (pure rearrangements) are used.
    pub fn blattner_multiplicity(
        &mut self,
        shape: &LeviShape,
        theta_a: &[i64],
        theta_o: &[i64],
        mu: &[i64],
        signed: bool,
    ) -> BlattnerReport {
        let g = shape.group();
        let r2 = two_rho(g);
        let shifted: IVec = mu.iter().zip(&r2).map(|(x, y)| 2 * x + y).collect();
        let roots = positive_roots(g);
        let size_a: i64 = theta_a.iter().sum();
        let w = self.weyl(g).to_vec();
        let images = levi_regular_images(&w, shape, &shifted, signed);
        let mut report = BlattnerReport { total: 0, layers: BTreeMap::new(), terms: Vec::new() };
        for v in images {
            let length = roots.iter().filter(|a| dot(&v, a) < 0).count();
            let image: IVec = v.iter().zip(&r2).map(|(x, y)| (x - y) / 2).collect();
            let deg = shape.a_degree(&image) - size_a;
            let mult = if deg < 0 {
                0
            } else {
                let s = sym_algebra_a_degree(shape, deg as usize);
                self.sigma_times(shape, theta_a, theta_o, &s, &image)
            };
            let sign = if length % 2 == 0 { 1 } else { -1 };
            report.total += sign * mult;
            *report.layers.entry(length).or_insert(0) += mult;
            report.terms.push(BlattnerTerm { image, length, multiplicity: mult });
        }
        report
    }

    /// `[V_mu |_{M∩K} : σ]` by weight alternation (Frobenius reciprocity).
    pub fn frobenius_multiplicity(&mut self, shape: &LeviShape, theta_a: &[i64], theta_o: &[i64], mu: &[i64]) -> i64 {
        let g = shape.group();
        let mut sigma = theta_a.to_vec();
        sigma.extend_from_slice(theta_o);
        self.levi_multiplicity(shape, &sigma, |me, gamma| me.weight_multiplicity(g, mu, gamma))
    }

    /// Irreducible `U(q) × K'` constituents `(γ_1, γ_2, multiplicity)` of
    /// `S^m(n ∩ k)`.
    pub fn sym_power_constituents(&mut self, shape: &LeviShape, m: usize) -> Vec<(IVec, IVec, i64)> {
        let s = sym_power_nk(shape, m);
        let (ta, to) = (shape.a_type(), shape.k_prime());
        let q = shape.q;
        let mut out = Vec::new();
        let keys: Vec<IVec> = s.entries.keys().cloned().collect();
        for gamma in keys {
            if !is_dominant(ta, &gamma[..q]) || !is_dominant(to, &gamma[q..]) {
                continue;
            }
            let c = self.levi_multiplicity(shape, &gamma, |_, g| s.get(g));
            if c != 0 {
                out.push((gamma[..q].to_vec(), gamma[q..].to_vec(), c));
            }
        }
        out
    }

    /// Certifies the degree-`k` occurrence of `V_mu` in `σ ⊗ S^k(n ∩ k)`
    /// with `k = Σ|ν|`, together with the two tensor-product bounds used to
    /// reach it.
    pub fn h0_witness(
        &mut self,
        shape: &LeviShape,
        theta_a: &[i64],
        theta_o: &[i64],
        mu: &[i64],
        nus: &[Vec<i64>],
    ) -> Result<H0Witness> {
        let q = shape.q;
        let mut kappa: IVec = nus.iter().flatten().copied().collect();
        kappa.sort_unstable_by(|a, b| b.cmp(a));
        let k: i64 = kappa.iter().sum();
        let fail = |msg: String| Error::WitnessFailed(msg);
        let (mu_a, mu_o) = mu.split_at(q);
        if mu_a.iter().sum::<i64>() - theta_a.iter().sum::<i64>() != k {
            return Err(fail(format!("A-degree of {mu:?} differs from k = {k}")));
        }
        if kappa.len() > q.min(shape.r) {
            return Err(fail(format!("κ = {kappa:?} has too many parts")));
        }
        let s = sym_expand(shape, Some(k as usize), Some(k as usize));
        let multiplicity = self.sigma_times(shape, theta_a, theta_o, &s, mu);
        let part = |v: &[i64]| Partition::new(v.iter().map(|&x| x.max(0) as usize).collect()).ok();
        let lr_a = match (part(theta_a), part(&kappa), part(mu_a)) {
            (Some(a), Some(b), Some(c)) => lr_coefficient(&a, &b, &c),
            _ => 0,
        };
        let lr_o = match (part(theta_o), part(&kappa), part(mu_o)) {
            (Some(a), Some(b), Some(c)) if mu_o.iter().all(|&x| x >= 0) => lr_coefficient(&a, &b, &c),
            _ => 0,
        };
        let mut kappa_o = kappa.clone();
        kappa_o.resize(shape.r, 0);
        let k_prime_tensor = self.tensor_multiplicity(shape.k_prime(), theta_o, &kappa_o, mu_o);
        let w = H0Witness { k: k as usize, multiplicity, lr_a, k_prime_tensor, lr_o };
        let chain_ok = w.lr_a >= 1
            && w.lr_o >= 1
            && w.k_prime_tensor >= w.lr_o as i64
            && w.multiplicity >= w.lr_a as i64 * w.k_prime_tensor
            && w.multiplicity > 0;
        if !chain_ok {
            return Err(fail(format!("{w:?}")));
        }
        Ok(w)
    }

    /// Lists the K-types `μ'` with `μ'_1 ≤ limit` and `|μ'| ≤ size_limit`
    /// occurring in the module induced from `σ`, and compares their spin
    /// norms with `‖2λ‖²`.
    pub fn dirac_search(
        &mut self,
        shape: &LeviShape,
        theta_a: &[i64],
        theta_o: &[i64],
        two_lambda: &Weight,
        limit: i64,
        size_limit: i64,
    ) -> DiracSearch {
        let g = shape.group();
        let bound = two_lambda.norm2();
        let mut occurrences = Vec::new();
        let sigma_size: i64 = theta_a.iter().sum::<i64>() + theta_o.iter().sum::<i64>();
        for cand in dominant_box(g, limit) {
            let sz: i64 = cand.iter().sum();
            if sz > size_limit || (sz - sigma_size) % 2 != 0 && g.family != Family::B {
                continue;
            }
            let m = self.frobenius_multiplicity(shape, theta_a, theta_o, &cand);
            if m != 0 {
                let w = Weight::from_ints(g, &cand).expect("rank");
                occurrences.push(Occurrence { mu: cand, multiplicity: m, spin_norm: spin_norm(&w) });
            }
        }
        let minimal = occurrences.iter().filter(|o| o.spin_norm == bound).map(|o| o.mu.clone()).collect();
        DiracSearch { occurrences, bound, minimal }
    }
}

/// Images `w(v)` of a regular dominant doubled vector that are regular
/// dominant for `U(q) × K'`. Without `signed`, images with negative
/// entries are dropped.
fn levi_regular_images(w: &[WeylElement], shape: &LeviShape, v: &[i64], signed: bool) -> BTreeSet<IVec> {
    let q = shape.q;
    let strict = |x: &[i64]| x.windows(2).all(|p| p[0] > p[1]);
    w.iter()
        .map(|e| e.act(v))
        .filter(|img| signed || img.iter().all(|&x| x >= 0))
        .filter(|img| {
            let (a, o) = img.split_at(q);
            if !strict(a) {
                return false;
            }
            match (shape.family, o.len()) {
                (_, 0) => true,
                (Family::D, 1) => true,
                (Family::D, r) => strict(&o[..r - 1]) && o[r - 2] > o[r - 1].abs(),
                (_, r) => strict(o) && o[r - 1] > 0,
            }
        })
        .collect()
}

/// Dominant integral weights of `t` with all absolute values at most
/// `limit`.
pub fn dominant_box(t: GroupType, limit: i64) -> Vec<IVec> {
    fn go(t: GroupType, i: usize, cap: i64, limit: i64, cur: &mut IVec, out: &mut Vec<IVec>) {
        let n = t.rank;
        if i == n {
            out.push(cur.clone());
            return;
        }
        let low = match t.family {
            Family::A => -limit,
            Family::D if i == n - 1 => -cap,
            _ => 0,
        };
        for x in (low..=cap).rev() {
            cur.push(x);
            go(t, i + 1, if t.family == Family::D && i == n - 1 { cap } else { x }, limit, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(t, 0, limit, limit, &mut Vec::new(), &mut out);
    out
}

/// Freudenthal's recursion on the dominant weights of `V_lam`.
fn freudenthal(t: GroupType, lam: &[i64]) -> HashMap<IVec, i64> {
    let r2 = two_rho(t);
    let roots = positive_roots(t);
    let limit = lam.iter().map(|x| x.abs()).max().unwrap_or(0);
    let doms: Vec<IVec> = match t.family {
        Family::A => {
            let (hi, lo) = (lam.first().copied().unwrap_or(0), lam.last().copied().unwrap_or(0));
            dominant_box(t, limit)
                .into_iter()
                .filter(|v| v.iter().all(|&x| x <= hi && x >= lo))
                .filter(|v| preceq(t, v, lam))
                .collect()
        }
        _ => dominant_box(t, limit).into_iter().filter(|v| preceq(t, v, lam)).collect(),
    };
    let set: BTreeSet<IVec> = doms.iter().cloned().collect();
    let mut order = doms;
    order.sort_by_key(|m| std::cmp::Reverse(dot(m, &r2)));
    let big: IVec = lam.iter().zip(&r2).map(|(x, y)| 2 * x + y).collect();
    let norm_big = dot(&big, &big);
    let mut mult: HashMap<IVec, i64> = HashMap::new();
    for m in order {
        if m == lam {
            mult.insert(m, 1);
            continue;
        }
        let shifted: IVec = m.iter().zip(&r2).map(|(x, y)| 2 * x + y).collect();
        let den = norm_big - dot(&shifted, &shifted);
        let mut num = 0;
        for a in &roots {
            let mut k = 1;
            loop {
                let w: IVec = m.iter().zip(a).map(|(x, y)| x + k * y).collect();
                let d = dominant_form(t, &w);
                if !set.contains(&d) {
                    break;
                }
                num += mult.get(&d).copied().unwrap_or(0) * 4 * dot(&w, a);
                k += 1;
            }
        }
        assert!(den > 0 && (2 * num) % den == 0, "Freudenthal division for {lam:?} at {m:?}");
        let v = 2 * num / den;
        if v != 0 {
            mult.insert(m, v);
        }
    }
    mult
}

/// Weyl's dimension formula.
pub fn weyl_dimension(t: GroupType, lam: &[i64]) -> i64 {
    let r2 = two_rho(t);
    let big: IVec = lam.iter().zip(&r2).map(|(x, y)| 2 * x + y).collect();
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for a in positive_roots(t) {
        num *= dot(&big, &a) as i128;
        den *= dot(&r2, &a) as i128;
    }
    (num / den) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gt(f: Family, r: usize) -> GroupType {
        GroupType::new(f, r)
    }

    #[test]
    fn standard_and_trivial() {
        let mut o = Oracle::new();
        let w = o.irrep_weights(gt(Family::C, 2), &[1, 0]);
        assert_eq!(w.total(), 4);
        assert_eq!(w.len(), 4);
        assert!(w.entries.values().all(|&m| m == 1));
        assert_eq!(w.get(&[0, -1]), 1);
        for f in [Family::A, Family::B, Family::C, Family::D] {
            let w = o.irrep_weights(gt(f, 3), &[0, 0, 0]);
            assert_eq!(w.entries, BTreeMap::from([(vec![0, 0, 0], 1)]));
        }
        assert_eq!(o.irrep_weights(gt(Family::C, 2), &[1, 1]).total(), 5);
    }

    #[test]
    fn dimensions_match_weyl() {
        let mut o = Oracle::new();
        for (f, r) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 3), (Family::D, 4), (Family::B, 2)] {
            let t = gt(f, r);
            for lam in dominant_box(t, 3) {
                if f == Family::A && lam.iter().any(|&x| x < 0) {
                    continue;
                }
                assert_eq!(o.irrep_weights(t, &lam).total(), weyl_dimension(t, &lam), "{t} {lam:?}");
            }
        }
    }

    #[test]
    fn symmetric_powers() {
        let shape = LeviShape::new(Family::C, 1, 2);
        assert_eq!(sym_power_nk(&shape, 0).entries, BTreeMap::from([(vec![0, 0, 0], 1)]));
        let s1 = sym_power_nk(&shape, 1);
        assert_eq!(s1.total(), 5);
        for v in [[1, 1, 0], [1, -1, 0], [1, 0, 1], [1, 0, -1], [2, 0, 0]] {
            assert_eq!(s1.get(&v), 1);
        }
        assert_eq!(sym_power_nk(&shape, 2).total(), 15);
    }

    #[test]
    fn sp6_blattner() {
        let mut o = Oracle::new();
        let shape = LeviShape::new(Family::C, 1, 2);
        let rep = o.blattner_multiplicity(&shape, &[2], &[2, 0], &[3, 2, 1], true);
        assert!(rep.total >= 1);
        assert_eq!(rep.higher_layers(), 0);
        assert_eq!(rep.total, o.frobenius_multiplicity(&shape, &[2], &[2, 0], &[3, 2, 1]));
        let unsigned = o.blattner_multiplicity(&shape, &[2], &[2, 0], &[3, 2, 1], false);
        assert_eq!(unsigned.total, rep.total);
        // Identity layer at the lowest K-type.
        let id = o.blattner_multiplicity(&shape, &[2], &[0, 0], &[2, 0, 0], false);
        let t0 = id.terms.iter().find(|t| t.length == 0).unwrap();
        assert_eq!(t0.multiplicity, 1);
    }

    #[test]
    fn witness_sp6() {
        let mut o = Oracle::new();
        let shape = LeviShape::new(Family::C, 1, 2);
        let w = o.h0_witness(&shape, &[2], &[2, 0], &[3, 2, 1], &[vec![1]]).unwrap();
        assert_eq!(w.k, 1);
        let w = o.h0_witness(&LeviShape::new(Family::C, 0, 3), &[], &[3, 0, 0], &[3, 0, 0], &[]).unwrap();
        assert_eq!(w.k, 0);
        assert_eq!(w.multiplicity, 1);
    }

    #[test]
    fn tensor_against_lr() {
        let mut o = Oracle::new();
        let t = gt(Family::A, 3);
        assert_eq!(o.tensor_multiplicity(t, &[2, 1, 0], &[2, 1, 0], &[3, 2, 1]), 2);
        assert_eq!(o.tensor_multiplicity(t, &[1, 0, 0], &[1, 0, 0], &[2, 0, 0]), 1);
    }

    #[test]
    fn weyl_group_sizes() {
        assert_eq!(weyl_group(gt(Family::B, 3)).len(), 48);
        assert_eq!(weyl_group(gt(Family::D, 3)).len(), 24);
        assert_eq!(weyl_group(gt(Family::A, 3)).len(), 6);
        assert_eq!(weyl_group(gt(Family::D, 1)).len(), 1);
        assert_eq!(weyl_group(gt(Family::A, 0)).len(), 1);
        let s: i64 = weyl_group(gt(Family::C, 3)).iter().map(|w| w.sign).sum();
        assert_eq!(s, 0);
    }
}
