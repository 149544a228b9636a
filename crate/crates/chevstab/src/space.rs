use crate::error::{Error, Result};
use crate::scalar::Rat;
use num::{BigInt, BigUint, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;

/// One basis class of `H^*(X, omega_X)`.
///
/// `c` is the cohomological degree in the dualizing-complex reading, in
/// `[-2 dimX, 0]`. The same index read through Verdier duality is a class of
/// `H^*_c(X)` in degree `-c` with Frobenius exponent `-e`; the cup product is
/// recorded on that compactly-supported reading.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpaceClass {
    pub c: i64,
    pub w: i64,
    pub e: Option<i64>,
}

/// Built-in space shapes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpaceKind {
    Affine(u32),
    ProjSpace(u32),
    /// Genus-`g` curve; `proper = false` removes one point.
    CurveGenus {
        g: u32,
        proper: bool,
    },
    Custom,
}

/// Finite model of the space `X`: graded basis, cup products on the
/// compactly-supported reading, and point counts over finite fields.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    pub name: String,
    pub dim_x: u32,
    pub basis: Vec<SpaceClass>,
    pub fundamental: usize,
    /// Products of dual classes, stored on ordered pairs `i <= j`:
    /// `dual(i) . dual(j) = sum coeff * dual(k)`.
    mult: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
    /// Exponents `a_i` with `zeta_X(s) = prod 1/(1 - q^(a_i - s))`; implies
    /// `N_e = sum q^(a_i e)` for every prime power `q`.
    pub zeta_exponents: Option<Vec<i64>>,
    /// Explicit point counts `|X(F_{q^e})|` for `e = 1..`, tied to one `q`.
    pub point_counts: Option<(u64, Vec<BigUint>)>,
    pub trace_supported: bool,
}

impl SpaceSpec {
    /// Compactly-supported degree of the dual of class `i`.
    pub fn dual_degree(&self, i: usize) -> i64 {
        -self.basis[i].c
    }

    pub fn dual_e(&self, i: usize) -> Option<i64> {
        self.basis[i].e.map(|e| -e)
    }

    pub fn dual_w(&self, i: usize) -> i64 {
        -self.basis[i].w
    }

    /// Product of two dual classes in either order, with the Koszul sign of
    /// graded commutativity.
    pub fn product(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        let (a, b, flip) = if i <= j { (i, j, false) } else { (j, i, true) };
        let raw = self.mult.get(&(a, b)).cloned().unwrap_or_default();
        if flip && self.dual_degree(i) % 2 != 0 && self.dual_degree(j) % 2 != 0 {
            raw.into_iter().map(|(k, c)| (k, -c)).collect()
        } else {
            raw
        }
    }

    fn product_into(&self, acc: &[(usize, Rat)], j: usize) -> Vec<(usize, Rat)> {
        let mut out: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, ci) in acc {
            for (k, ck) in self.product(*i, j) {
                let entry = out.entry(k).or_insert_with(Rat::zero);
                *entry += ci * &ck;
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Iterated product `dual(i_1) . dual(i_2) ... dual(i_r)`, left to right.
    pub fn iterated_product(&self, indices: &[usize]) -> Vec<(usize, Rat)> {
        if indices.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![(indices[0], Rat::one())];
        for &j in &indices[1..] {
            acc = self.product_into(&acc, j);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// True if every `r`-fold product of dual classes vanishes.
    pub fn all_products_vanish(&self, r: usize) -> bool {
        let n = self.basis.len();
        let mut tuple = vec![0usize; r];
        loop {
            if !self.iterated_product(&tuple).is_empty() {
                return false;
            }
            // Next nondecreasing tuple (products are symmetric up to sign).
            let mut i = r;
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                if tuple[i] + 1 < n {
                    let v = tuple[i] + 1;
                    for t in tuple.iter_mut().skip(i) {
                        *t = v;
                    }
                    break;
                }
            }
        }
    }

    /// `|X(F_{q^e})|` for `e = 1..=bound`.
    pub fn n_sequence(&self, q: u64, bound: usize) -> Result<Vec<BigUint>> {
        if let Some(exps) = &self.zeta_exponents {
            let qq = BigInt::from(q);
            let mut out = Vec::with_capacity(bound);
            for e in 1..=bound {
                let mut acc = BigInt::zero();
                for &a in exps {
                    if a < 0 {
                        return Err(Error::Unsupported("negative zeta exponent".into()));
                    }
                    acc += qq.pow((a as usize * e) as u32);
                }
                out.push(acc.to_biguint().unwrap());
            }
            return Ok(out);
        }
        if let Some((q0, n)) = &self.point_counts {
            if *q0 != q {
                return Err(Error::Unsupported(format!(
                    "point counts recorded for q={q0}, requested q={q}"
                )));
            }
            if n.len() < bound {
                return Err(Error::Unsupported(format!(
                    "point counts available to depth {}, need {bound}",
                    n.len()
                )));
            }
            return Ok(n[..bound].to_vec());
        }
        Err(Error::Unsupported(format!(
            "space {} carries no point counts",
            self.name
        )))
    }

    /// Inverse zeta value `zeta_X(s)^{-1} = prod (1 - q^(a_i - s))` as a
    /// Laurent polynomial in `q`, for built-in Tate spaces.
    pub fn zeta_inverse(&self, s: i64) -> Result<crate::scalar::Laurent> {
        use crate::scalar::Laurent;
        let exps = self.zeta_exponents.as_ref().ok_or_else(|| {
            Error::Unsupported(format!("space {} has no rational zeta form", self.name))
        })?;
        let mut acc = Laurent::one();
        for &a in exps {
            acc = &acc * &(&Laurent::one() - &Laurent::q_pow(a - s));
        }
        Ok(acc)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim_x as i64;
        if self.dim_x < 1 {
            return Err(Error::Validation("dimX must be >= 1".into()));
        }
        if self.basis.is_empty() {
            return Err(Error::Validation("empty basis".into()));
        }
        if self.fundamental >= self.basis.len() {
            return Err(Error::Validation("fundamental index out of range".into()));
        }
        for (i, cls) in self.basis.iter().enumerate() {
            if cls.c < -2 * d || cls.c > 0 {
                return Err(Error::Validation(format!(
                    "class {i} at degree {} outside [-2 dimX, 0]",
                    cls.c
                )));
            }
        }
        let fund_classes: Vec<usize> = (0..self.basis.len())
            .filter(|&i| self.basis[i].c == -2 * d)
            .collect();
        if fund_classes != vec![self.fundamental] {
            return Err(Error::Validation(
                "need exactly one class at c = -2 dimX, the fundamental class".into(),
            ));
        }
        if self.basis[self.fundamental].e != Some(d) {
            return Err(Error::Validation(
                "fundamental class must carry frobExp dimX".into(),
            ));
        }
        if self.trace_supported != self.basis.iter().all(|c| c.e.is_some()) {
            return Err(Error::Validation(
                "traceSupported flag disagrees with basis".into(),
            ));
        }
        for &(i, j) in self.mult.keys() {
            if i > j || j >= self.basis.len() {
                return Err(Error::Validation("malformed mult table key".into()));
            }
        }
        // Degree, weight and Frobenius additivity on the dual reading.
        let n = self.basis.len();
        for i in 0..n {
            for j in i..n {
                for (k, coeff) in self.product(i, j) {
                    if coeff.is_zero() {
                        continue;
                    }
                    if self.dual_degree(k) != self.dual_degree(i) + self.dual_degree(j) {
                        return Err(Error::Validation(format!(
                            "product ({i},{j})->{k} is not degree-additive"
                        )));
                    }
                    if self.dual_w(k) != self.dual_w(i) + self.dual_w(j) {
                        return Err(Error::Validation(format!(
                            "product ({i},{j})->{k} is not weight-additive"
                        )));
                    }
                    match (self.dual_e(i), self.dual_e(j), self.dual_e(k)) {
                        (Some(a), Some(b), Some(c)) if a + b != c => {
                            return Err(Error::Validation(format!(
                                "product ({i},{j})->{k} is not Frobenius-additive"
                            )));
                        }
                        (Some(_), Some(_), None) => {
                            return Err(Error::Validation(format!(
                                "product ({i},{j})->{k} loses the Frobenius exponent"
                            )));
                        }
                        _ => {}
                    }
                }
            }
        }
        // Graded commutativity: odd squares vanish.
        for i in 0..n {
            if self.dual_degree(i) % 2 != 0 && !self.product(i, i).is_empty() {
                return Err(Error::Validation(format!(
                    "odd class {i} has a nonzero square"
                )));
            }
        }
        // Associativity, exhaustively on the finite basis.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ij_k = self.product_into(&self.product(i, j), k);
                    let jk = self.product(j, k);
                    let mut i_jk: BTreeMap<usize, Rat> = BTreeMap::new();
                    for (t, c) in &jk {
                        for (u, c2) in self.product(i, *t) {
                            let entry = i_jk.entry(u).or_insert_with(Rat::zero);
                            *entry += c * &c2;
                        }
                    }
                    let i_jk: Vec<(usize, Rat)> =
                        i_jk.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    if ij_k != i_jk {
                        return Err(Error::Validation(format!(
                            "product not associative at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds one of the built-in space models. Tate built-ins derive point
/// counts from their rational zeta form for any `q`.
pub fn make_space(kind: SpaceKind) -> Result<SpaceSpec> {
    let spec = match kind {
        SpaceKind::Affine(d) => {
            if d < 1 {
                return Err(Error::Validation("affine dimension must be >= 1".into()));
            }
            let dd = d as i64;
            SpaceSpec {
                kind: SpaceKind::Affine(d),
                name: format!("A{d}"),
                dim_x: d,
                basis: vec![SpaceClass {
                    c: -2 * dd,
                    w: -2 * dd,
                    e: Some(dd),
                }],
                fundamental: 0,
                mult: BTreeMap::new(),
                zeta_exponents: Some(vec![dd]),
                point_counts: None,
                trace_supported: true,
            }
        }
        SpaceKind::ProjSpace(d) => {
            if d < 1 {
                return Err(Error::Validation(
                    "projective dimension must be >= 1".into(),
                ));
            }
            let dd = d as i64;
            // Index t holds the class at c = -2d + 2t; its dual is the
            // (d-t)-th power of the hyperplane class.
            let basis = (0..=dd)
                .map(|t| SpaceClass {
                    c: -2 * dd + 2 * t,
                    w: -2 * (dd - t),
                    e: Some(dd - t),
                })
                .collect();
            let mut mult = BTreeMap::new();
            for i in 0..=(dd as usize) {
                for j in i..=(dd as usize) {
                    let t = (i + j) as i64 - dd;
                    if (0..=dd).contains(&t) {
                        mult.insert((i, j), vec![(t as usize, Rat::one())]);
                    }
                }
            }
            SpaceSpec {
                kind: SpaceKind::ProjSpace(d),
                name: format!("P{d}"),
                dim_x: d,
                basis,
                fundamental: 0,
                mult,
                zeta_exponents: Some((0..=dd).collect()),
                point_counts: None,
                trace_supported: true,
            }
        }
        SpaceKind::CurveGenus { g, proper } => {
            if g == 0 && proper {
                let mut s = make_space(SpaceKind::ProjSpace(1))?;
                s.kind = SpaceKind::CurveGenus { g, proper };
                return Ok(s);
            }
            if g == 0 && !proper {
                let mut s = make_space(SpaceKind::Affine(1))?;
                s.kind = SpaceKind::CurveGenus { g, proper };
                return Ok(s);
            }
            // Index 0: fundamental class; 1..=g: alpha_i; g+1..=2g: beta_i.
            // Proper curves also carry the degree-0 class at the last index.
            let mut basis = vec![SpaceClass {
                c: -2,
                w: -2,
                e: Some(1),
            }];
            for _ in 0..2 * g {
                basis.push(SpaceClass {
                    c: -1,
                    w: -1,
                    e: None,
                });
            }
            let mut mult = BTreeMap::new();
            for i in 1..=(g as usize) {
                mult.insert((i, g as usize + i), vec![(0usize, Rat::one())]);
            }
            if proper {
                let unit = basis.len();
                basis.push(SpaceClass { c: 0, w: 0, e: Some(0) });
                for i in 0..unit {
                    mult.insert((i, unit), vec![(i, Rat::one())]);
                }
                mult.insert((unit, unit), vec![(unit, Rat::one())]);
            }
            SpaceSpec {
                kind: SpaceKind::CurveGenus { g, proper },
                name: format!("genus{g}{}", if proper { "" } else { "-open" }),
                dim_x: 1,
                basis,
                fundamental: 0,
                mult,
                zeta_exponents: None,
                point_counts: None,
                trace_supported: false,
            }
        }
        SpaceKind::Custom => {
            return Err(Error::Validation(
                "custom spaces are built from a config file".into(),
            ))
        }
    };
    spec.validate()?;
    Ok(spec)
}

/// Parses a space name as used on the command line: `A1`, `A2`, `P1`, `P2`,
/// `genus:g`, `genus:g:open`.
pub fn space_by_name(name: &str) -> Result<SpaceSpec> {
    if let Some(d) = name.strip_prefix('A') {
        if let Ok(d) = d.parse::<u32>() {
            return make_space(SpaceKind::Affine(d));
        }
    }
    if let Some(d) = name.strip_prefix('P') {
        if let Ok(d) = d.parse::<u32>() {
            return make_space(SpaceKind::ProjSpace(d));
        }
    }
    if let Some(rest) = name.strip_prefix("genus:") {
        let (g, proper) = match rest.strip_suffix(":open") {
            Some(g) => (g, false),
            None => (rest, true),
        };
        let g: u32 = g
            .parse()
            .map_err(|_| Error::Parse(format!("bad genus {rest:?}")))?;
        return make_space(SpaceKind::CurveGenus { g, proper });
    }
    Err(Error::Parse(format!(
        "unknown space {name:?}; expected A<d>, P<d>, genus:<g>[:open]"
    )))
}

// ---------------------------------------------------------------------------
// Space config files

#[derive(Serialize, Deserialize)]
struct SpaceConfig {
    #[serde(rename = "dimX")]
    dim_x: u32,
    basis: Vec<SpaceClass>,
    fundamental: usize,
    mult: Vec<MultEntry>,
    #[serde(default)]
    q: Option<u64>,
    #[serde(default, rename = "pointCounts")]
    point_counts: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct MultEntry {
    i: usize,
    j: usize,
    k: usize,
    coeff: String,
}

/// Loads and validates a custom space from its JSON config.
pub fn space_from_config(text: &str) -> Result<SpaceSpec> {
    let cfg: SpaceConfig = serde_json::from_str(text)?;
    let mut mult: BTreeMap<(usize, usize), Vec<(usize, Rat)>> = BTreeMap::new();
    let nb = cfg.basis.len();
    for entry in &cfg.mult {
        if entry.i >= nb || entry.j >= nb || entry.k >= nb {
            return Err(Error::Validation("mult index out of range".into()));
        }
        let coeff = Rat::from_str(&entry.coeff)
            .map_err(|e| Error::Parse(format!("bad coefficient {:?}: {e}", entry.coeff)))?;
        // Normalize to i <= j with the graded-commutativity sign.
        let (i, j, c) = if entry.i <= entry.j {
            (entry.i, entry.j, coeff)
        } else {
            let odd = cfg.basis[entry.i].c % 2 != 0 && cfg.basis[entry.j].c % 2 != 0;
            (entry.j, entry.i, if odd { -coeff } else { coeff })
        };
        mult.entry((i, j)).or_default().push((entry.k, c));
    }
    for list in mult.values_mut() {
        let mut merged: BTreeMap<usize, Rat> = BTreeMap::new();
        for (k, c) in list.drain(..) {
            *merged.entry(k).or_insert_with(Rat::zero) += c;
        }
        *list = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    let point_counts = match (cfg.q, cfg.point_counts) {
        (Some(q), Some(counts)) => {
            let parsed = counts
                .iter()
                .map(|s| {
                    BigUint::from_str(s)
                        .map_err(|e| Error::Parse(format!("bad point count {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Some((q, parsed))
        }
        (None, Some(_)) => {
            return Err(Error::Validation(
                "pointCounts given without the prime power q".into(),
            ))
        }
        _ => None,
    };
    let trace_supported = cfg.basis.iter().all(|c| c.e.is_some());
    let spec = SpaceSpec {
        kind: SpaceKind::Custom,
        name: "custom".into(),
        dim_x: cfg.dim_x,
        basis: cfg.basis,
        fundamental: cfg.fundamental,
        mult,
        zeta_exponents: None,
        point_counts,
        trace_supported,
    };
    spec.validate()?;
    Ok(spec)
}

// ---------------------------------------------------------------------------
// Closed points

/// Counts of closed points of each degree, recovered from the point counts
/// `N_e` by Moebius inversion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosedPointCounts {
    pub q: u64,
    pub m: Vec<BigUint>,
}

pub fn moebius(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `M_e = (1/e) sum_{f | e} mu(e/f) N_f`, with exactness enforced.
pub fn closed_points(q: u64, n: &[BigUint], bound: usize) -> Result<ClosedPointCounts> {
    if n.len() < bound {
        return Err(Error::Domain(format!(
            "need N_e to depth {bound}, got {}",
            n.len()
        )));
    }
    let mut m = Vec::with_capacity(bound);
    for e in 1..=bound {
        let mut acc = BigInt::zero();
        for f in 1..=e {
            if e % f == 0 {
                let mu = moebius((e / f) as u64);
                if mu != 0 {
                    acc += BigInt::from(mu) * BigInt::from(n[f - 1].clone());
                }
            }
        }
        let (quot, rem) = num::Integer::div_rem(&acc, &BigInt::from(e));
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::Inconsistent(format!(
                "N is not a point-count sequence: M_{e} = {acc}/{e}"
            )));
        }
        m.push(quot.to_biguint().unwrap());
    }
    Ok(ClosedPointCounts { q, m })
}

impl ClosedPointCounts {
    /// Rebuilds `N_e = sum_{f|e} f * M_f`.
    pub fn rebuild_n(&self) -> Vec<BigUint> {
        let mut n = Vec::with_capacity(self.m.len());
        for e in 1..=self.m.len() {
            let mut acc = BigUint::zero();
            for f in 1..=e {
                if e % f == 0 {
                    acc += BigUint::from(f) * &self.m[f - 1];
                }
            }
            n.push(acc);
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn builtin_spaces_validate() {
        for spec in [
            make_space(SpaceKind::Affine(1)).unwrap(),
            make_space(SpaceKind::Affine(2)).unwrap(),
            make_space(SpaceKind::ProjSpace(1)).unwrap(),
            make_space(SpaceKind::ProjSpace(2)).unwrap(),
            make_space(SpaceKind::CurveGenus { g: 1, proper: true }).unwrap(),
            make_space(SpaceKind::CurveGenus { g: 2, proper: false }).unwrap(),
        ] {
            spec.validate().unwrap();
        }
    }

    #[test]
    fn affine_line_is_one_class() {
        let a1 = make_space(SpaceKind::Affine(1)).unwrap();
        assert_eq!(a1.basis.len(), 1);
        assert_eq!(a1.basis[0].c, -2);
        assert_eq!(a1.basis[0].e, Some(1));
        assert!(a1.product(0, 0).is_empty());
    }

    #[test]
    fn proj_line_matches_genus_zero() {
        let p1 = make_space(SpaceKind::ProjSpace(1)).unwrap();
        assert_eq!(p1.basis.len(), 2);
        assert_eq!(p1.basis.iter().map(|b| b.c).collect::<Vec<_>>(), vec![-2, 0]);
        let g0 = make_space(SpaceKind::CurveGenus { g: 0, proper: true }).unwrap();
        assert_eq!(p1.basis, g0.basis);
        // Unit * point = point on the dual ring.
        assert_eq!(p1.product(0, 1), vec![(0, rat(1))]);
        assert_eq!(p1.product(1, 1), vec![(1, rat(1))]);
        assert!(p1.product(0, 0).is_empty());
    }

    #[test]
    fn lefschetz_for_the_space_itself() {
        // sum over basis of (-1)^c q^e = |X(F_q)| for Tate built-ins.
        for (name, expect) in [("A1", 2i64), ("A2", 4), ("P1", 3), ("P2", 7)] {
            let s = space_by_name(name).unwrap();
            let mut acc = rat(0);
            for b in &s.basis {
                let term = crate::scalar::pow_rat(&rat(2), b.e.unwrap());
                if b.c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            assert_eq!(acc, rat(expect), "space {name}");
            let n1 = s.n_sequence(2, 1).unwrap()[0].clone();
            assert_eq!(acc, rat(i64::try_from(n1).unwrap()));
        }
    }

    #[test]
    fn symplectic_pairing_antisymmetry() {
        let e = make_space(SpaceKind::CurveGenus { g: 1, proper: true }).unwrap();
        // alpha at 1, beta at 2: product in the other order flips sign.
        assert_eq!(e.product(1, 2), vec![(0, rat(1))]);
        assert_eq!(e.product(2, 1), vec![(0, rat(-1))]);
    }

    #[test]
    fn vanishing_products_check() {
        assert!(space_by_name("A1").unwrap().all_products_vanish(2));
        assert!(space_by_name("A2").unwrap().all_products_vanish(3));
        assert!(!space_by_name("P1").unwrap().all_products_vanish(2));
    }

    #[test]
    fn closed_points_examples() {
        // A1 over F_2: N = (2,4,8) -> M = (2,1,2).
        let n: Vec<BigUint> = [2u32, 4, 8].iter().map(|&x| BigUint::from(x)).collect();
        let m = closed_points(2, &n, 3).unwrap();
        assert_eq!(
            m.m,
            vec![BigUint::from(2u32), BigUint::from(1u32), BigUint::from(2u32)]
        );
        assert_eq!(m.rebuild_n(), n);

        // P1 over F_2: N = (3,5,9) -> M = (3,1,2).
        let n: Vec<BigUint> = [3u32, 5, 9].iter().map(|&x| BigUint::from(x)).collect();
        let m = closed_points(2, &n, 3).unwrap();
        assert_eq!(
            m.m,
            vec![BigUint::from(3u32), BigUint::from(1u32), BigUint::from(2u32)]
        );
        assert_eq!(m.rebuild_n(), n);

        // A single rational point: N = (1,1,1) -> M = (1,0,0).
        let n: Vec<BigUint> = vec![BigUint::one(); 3];
        let m = closed_points(5, &n, 3).unwrap();
        assert_eq!(m.m, vec![BigUint::one(), BigUint::zero(), BigUint::zero()]);
    }

    #[test]
    fn closed_points_rejects_non_counts() {
        // N = (2,3): M_2 = (3-2)/2 is not integral.
        let n: Vec<BigUint> = [2u32, 3].iter().map(|&x| BigUint::from(x)).collect();
        assert!(closed_points(2, &n, 2).is_err());
    }

    #[test]
    fn zeta_inverse_closed_forms() {
        use crate::scalar::Laurent;
        let a1 = space_by_name("A1").unwrap();
        // zeta_{A1}(2)^{-1} = 1 - q^{-1}.
        assert_eq!(
            a1.zeta_inverse(2).unwrap(),
            &Laurent::one() - &Laurent::q_pow(-1)
        );
        let p1 = space_by_name("P1").unwrap();
        // zeta_{P1}(2)^{-1} = (1 - q^{-2})(1 - q^{-1}).
        let expect = &(&Laurent::one() - &Laurent::q_pow(-2))
            * &(&Laurent::one() - &Laurent::q_pow(-1));
        assert_eq!(p1.zeta_inverse(2).unwrap(), expect);
    }

    #[test]
    fn custom_space_round_trip() {
        let cfg = r#"{
            "dimX": 1,
            "basis": [
                {"c": -2, "w": -2, "e": 1},
                {"c": 0, "w": 0, "e": 0}
            ],
            "fundamental": 0,
            "mult": [
                {"i": 0, "j": 1, "k": 0, "coeff": "1"},
                {"i": 1, "j": 1, "k": 1, "coeff": "1"}
            ],
            "q": 2,
            "pointCounts": ["3", "5", "9"]
        }"#;
        let s = space_from_config(cfg).unwrap();
        assert!(s.trace_supported);
        assert_eq!(s.n_sequence(2, 3).unwrap()[2], BigUint::from(9u32));
        assert!(s.n_sequence(3, 1).is_err());
    }

    #[test]
    fn custom_space_rejects_bad_mult() {
        // Degree-inadditive product.
        let cfg = r#"{
            "dimX": 1,
            "basis": [
                {"c": -2, "w": -2, "e": 1},
                {"c": 0, "w": 0, "e": 0}
            ],
            "fundamental": 0,
            "mult": [
                {"i": 1, "j": 1, "k": 0, "coeff": "1"}
            ]
        }"#;
        assert!(space_from_config(cfg).is_err());
    }

    #[test]
    fn missing_fundamental_is_rejected() {
        let cfg = r#"{
            "dimX": 1,
            "basis": [{"c": 0, "w": 0, "e": 0}],
            "fundamental": 0,
            "mult": []
        }"#;
        assert!(space_from_config(cfg).is_err());
    }
}
