use crate::error::{Error, Result};
use crate::grading::{MultiDegree, NSpec};
use crate::scalar::Rat;
use crate::space::SpaceSpec;
use crate::table::{CohomologyTable, TableKey};
use num::{One, Zero};
use std::fmt;

/// Role of a model class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassKind {
    /// Pointlike unit for color `k`.
    Unit(usize),
    /// Space class tensored with the color-`k` generator.
    Gen { color: usize, space_class: usize },
    /// Space class tensored with the top class; `None` in the pointlike model.
    Y { space_class: Option<usize> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelClass {
    pub kind: ClassKind,
    pub gr: MultiDegree,
    pub c: i64,
    pub w: i64,
    pub e: Option<i64>,
}

impl ModelClass {
    /// Cohomological degree of the corresponding cochain variable.
    pub fn var_degree(&self) -> i64 {
        self.c + 1
    }

    pub fn var_is_odd(&self) -> bool {
        self.var_degree().rem_euclid(2) == 1
    }
}

/// One structure constant of the single `|n|`-ary bracket: the inputs are a
/// sorted multiset of Unit/Gen classes whose colors form the multiset `n`,
/// the output a Y class.
#[derive(Clone, PartialEq, Debug)]
pub struct BracketEntry {
    pub inputs: Vec<usize>,
    pub output: usize,
    pub coeff: Rat,
}

/// Finite model with one `|n|`-ary bracket. Classes are recorded in the
/// coalgebra degree reading; the cochain complex on the shifted variables
/// computes the cohomology of the configuration spaces.
#[derive(Clone, PartialEq, Debug)]
pub struct LInftyModel {
    pub m: usize,
    pub n: NSpec,
    pub dim_x: u32,
    pub space_name: String,
    /// Index of the space's fundamental class for tensored models.
    pub fundamental_space: Option<usize>,
    pub classes: Vec<ModelClass>,
    pub bracket: Vec<BracketEntry>,
    pub trace_supported: bool,
}

impl LInftyModel {
    /// Arity of the bracket, when the color counts are finite.
    pub fn arity(&self) -> Option<usize> {
        self.n.total().map(|t| t as usize)
    }

    pub fn is_pointlike(&self) -> bool {
        self.fundamental_space.is_none()
    }

    pub fn is_unit_class(&self, i: usize) -> bool {
        match self.classes[i].kind {
            ClassKind::Unit(_) => true,
            ClassKind::Gen { space_class, .. } => Some(space_class) == self.fundamental_space,
            ClassKind::Y { .. } => false,
        }
    }

    pub fn unit_class_for_color(&self, k: usize) -> Option<usize> {
        (0..self.classes.len()).find(|&i| {
            self.is_unit_class(i)
                && match self.classes[i].kind {
                    ClassKind::Unit(c) => c == k,
                    ClassKind::Gen { color, .. } => color == k,
                    _ => false,
                }
        })
    }

    pub fn is_strongly_unital(&self) -> bool {
        (0..self.m).all(|k| self.unit_class_for_color(k).is_some())
    }

    /// Dimension table of the model itself: one entry per class.
    pub fn dims_table(&self) -> CohomologyTable {
        let mut t = CohomologyTable::new();
        for cls in &self.classes {
            t.insert(
                TableKey {
                    d: cls.gr.clone(),
                    c: cls.c,
                    w: cls.w,
                    e: if self.trace_supported { cls.e } else { None },
                },
                1,
            );
        }
        t
    }

    /// Bracket degree bookkeeping: in the stored coalgebra reading every
    /// structure constant must satisfy `c(out) = sum c(in) + (N - 2)`, along
    /// with additivity of the grading, weight, and Frobenius exponent.
    pub fn check_bracket_degrees(&self) -> Result<()> {
        let arity = self.arity().unwrap_or(0);
        for entry in &self.bracket {
            if entry.inputs.len() != arity {
                return Err(Error::Check(format!(
                    "bracket entry of arity {} in a model of arity {arity}",
                    entry.inputs.len()
                )));
            }
            let out = &self.classes[entry.output];
            if !matches!(out.kind, ClassKind::Y { .. }) {
                return Err(Error::Check("bracket output is not a Y class".into()));
            }
            let c_in: i64 = entry.inputs.iter().map(|&i| self.classes[i].c).sum();
            if out.c != c_in + (arity as i64 - 2) {
                return Err(Error::Check(format!(
                    "bracket degree: c(out)={} != {} + ({arity}-2)",
                    out.c, c_in
                )));
            }
            let mut gr = MultiDegree::zero(self.m);
            for &i in &entry.inputs {
                gr = gr.add(&self.classes[i].gr);
            }
            if gr != out.gr {
                return Err(Error::Check("bracket grading not additive".into()));
            }
            let w_in: i64 = entry.inputs.iter().map(|&i| self.classes[i].w).sum();
            if out.w != w_in {
                return Err(Error::Check("bracket weight not additive".into()));
            }
            let e_in: Option<i64> = entry.inputs.iter().map(|&i| self.classes[i].e).sum();
            match (e_in, out.e) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::Check("bracket frobExp not additive".into()))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Rescales each Y class by the given nonzero factor (identity on other
    /// classes). Cochain cohomology dimensions are invariant under this.
    pub fn rescale_y(&self, factors: &[Rat]) -> LInftyModel {
        let y_indices: Vec<usize> = (0..self.classes.len())
            .filter(|&i| matches!(self.classes[i].kind, ClassKind::Y { .. }))
            .collect();
        assert_eq!(factors.len(), y_indices.len());
        assert!(factors.iter().all(|f| !f.is_zero()));
        let mut out = self.clone();
        for entry in &mut out.bracket {
            let pos = y_indices.iter().position(|&y| y == entry.output).unwrap();
            // New basis vector y' = f*y, so the coefficient on y' is coeff/f.
            entry.coeff = &entry.coeff / &factors[pos];
        }
        out
    }

    /// Relabels the classes by `perm` (class `i` becomes `perm[i]`),
    /// transporting the bracket with the Koszul signs of re-sorting.
    pub fn permute(&self, perm: &[usize]) -> LInftyModel {
        assert_eq!(perm.len(), self.classes.len());
        let mut classes = vec![None; self.classes.len()];
        for (i, cls) in self.classes.iter().enumerate() {
            classes[perm[i]] = Some(cls.clone());
        }
        let classes: Vec<ModelClass> = classes.into_iter().map(|c| c.unwrap()).collect();
        let mut bracket = Vec::new();
        for entry in &self.bracket {
            let mut items: Vec<(usize, bool)> = entry
                .inputs
                .iter()
                .map(|&i| (perm[i], self.classes[i].var_is_odd()))
                .collect();
            let sign = sort_with_koszul_sign(&mut items);
            bracket.push(BracketEntry {
                inputs: items.into_iter().map(|(i, _)| i).collect(),
                output: perm[entry.output],
                coeff: &entry.coeff * &crate::scalar::rat(sign),
            });
        }
        bracket.sort_by(|a, b| (&a.inputs, a.output).cmp(&(&b.inputs, b.output)));
        LInftyModel {
            classes,
            bracket,
            ..self.clone()
        }
    }

    /// Debug dump: basis table plus bracket triples, deterministic order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "model m={} n={} dimX={} space={}\n",
            self.m, self.n, self.dim_x, self.space_name
        ));
        out.push_str("idx\tkind\tgr\tc\tw\te\n");
        for (i, cls) in self.classes.iter().enumerate() {
            let kind = match cls.kind {
                ClassKind::Unit(k) => format!("u{}", k + 1),
                ClassKind::Gen { color, space_class } => {
                    format!("h{space_class}*u{}", color + 1)
                }
                ClassKind::Y { space_class: Some(h) } => format!("h{h}*y"),
                ClassKind::Y { space_class: None } => "y".to_string(),
            };
            let e = cls.e.map(|e| e.to_string()).unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{i}\t{kind}\t{}\t{}\t{}\t{e}\n",
                cls.gr, cls.c, cls.w
            ));
        }
        for entry in &self.bracket {
            out.push_str(&format!(
                "l{}({:?}) -> {} : {}\n",
                entry.inputs.len(),
                entry.inputs,
                entry.output,
                entry.coeff
            ));
        }
        out
    }
}

impl fmt::Display for LInftyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

/// Sorts `(index, is_odd)` items by index, returning the Koszul sign
/// (-1 for every transposition of two odd items).
fn sort_with_koszul_sign(items: &mut [(usize, bool)]) -> i64 {
    let mut sign = 1i64;
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1].0 > items[j].0 {
            if items[j - 1].1 && items[j].1 {
                sign = -sign;
            }
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    sign
}

/// Builds the pointlike model: `m` unit classes and, for finite color
/// counts, one top class receiving the single `|n|`-ary bracket.
pub fn build_gmn(m: usize, n: &NSpec, dim_x: u32) -> Result<LInftyModel> {
    if m < 1 || n.num_colors() != m {
        return Err(Error::Domain(format!(
            "need m >= 1 and a color-count vector of length m; got m={m}, n={n}"
        )));
    }
    if !(n.is_all_finite() || n.is_all_infinite()) {
        return Err(Error::Domain(
            "color counts must be all finite or all infinite for the model".into(),
        ));
    }
    let d = dim_x as i64;
    let mut classes = Vec::new();
    for k in 0..m {
        classes.push(ModelClass {
            kind: ClassKind::Unit(k),
            gr: MultiDegree::unit(m, k),
            c: 2 * d - 1,
            w: 2 * d,
            e: Some(-d),
        });
    }
    let mut bracket = Vec::new();
    if let Some(total) = n.total() {
        if total < 2 {
            return Err(Error::Domain(format!("|n| must be at least 2, got {total}")));
        }
        let nn = total as i64;
        classes.push(ModelClass {
            kind: ClassKind::Y { space_class: None },
            gr: MultiDegree::new(n.0.iter().map(|p| p.unwrap()).collect()),
            c: 2 * d * nn - 2,
            w: 2 * d * nn,
            e: Some(-d * nn),
        });
        let mut inputs = Vec::new();
        for (k, p) in n.0.iter().enumerate() {
            for _ in 0..p.unwrap() {
                inputs.push(k);
            }
        }
        bracket.push(BracketEntry {
            inputs,
            output: m,
            coeff: Rat::one(),
        });
    }
    let model = LInftyModel {
        m,
        n: n.clone(),
        dim_x,
        space_name: "pt".into(),
        fundamental_space: None,
        classes,
        bracket,
        trace_supported: true,
    };
    model.check_bracket_degrees()?;
    Ok(model)
}

/// Tensors a pointlike model with a space: classes `h (x) u_k` and `h (x) y`
/// over the space basis, bracket given by iterated cup products on the
/// compactly-supported reading.
pub fn tensor_with_space(space: &SpaceSpec, g: &LInftyModel) -> Result<LInftyModel> {
    if !g.is_pointlike() {
        return Err(Error::Domain(
            "tensor_with_space expects a pointlike model".into(),
        ));
    }
    if space.dim_x != g.dim_x {
        return Err(Error::Domain(format!(
            "model built for dimension {} but space has dimension {}",
            g.dim_x, space.dim_x
        )));
    }
    space.validate()?;
    let m = g.m;
    let d = space.dim_x as i64;
    let nb = space.basis.len();
    let mut classes = Vec::new();
    // Gen classes, color-major: index k*nb + h.
    for k in 0..m {
        for (h, cls) in space.basis.iter().enumerate() {
            classes.push(ModelClass {
                kind: ClassKind::Gen {
                    color: k,
                    space_class: h,
                },
                gr: MultiDegree::unit(m, k),
                c: cls.c + (2 * d - 1),
                w: cls.w + 2 * d,
                e: cls.e.map(|e| e - d),
            });
        }
    }
    let mut bracket = Vec::new();
    if let Some(total) = g.n.total() {
        let nn = total as i64;
        let y_base = classes.len();
        let gr_y = MultiDegree::new(g.n.0.iter().map(|p| p.unwrap()).collect());
        for (h, cls) in space.basis.iter().enumerate() {
            classes.push(ModelClass {
                kind: ClassKind::Y {
                    space_class: Some(h),
                },
                gr: gr_y.clone(),
                c: cls.c + (2 * d * nn - 2),
                w: cls.w + 2 * d * nn,
                e: cls.e.map(|e| e - d * nn),
            });
        }
        // Sorted multisets of Gen classes realizing the color multiset: for
        // each color k a nondecreasing tuple of n_k space classes.
        let per_color: Vec<Vec<Vec<usize>>> = g
            .n
            .0
            .iter()
            .map(|p| nondecreasing_tuples(nb, p.unwrap() as usize))
            .collect();
        let mut choice = vec![0usize; m];
        'outer: loop {
            let mut inputs: Vec<usize> = Vec::new();
            let mut space_indices: Vec<usize> = Vec::new();
            for k in 0..m {
                for &h in &per_color[k][choice[k]] {
                    inputs.push(k * nb + h);
                    space_indices.push(h);
                }
            }
            // Repeated odd variables square to zero; skip those multisets.
            let degenerate = (1..inputs.len())
                .any(|t| inputs[t] == inputs[t - 1] && classes[inputs[t]].var_is_odd());
            if !degenerate {
                // Interleaving sign from moving the odd color generators past
                // the space classes.
                let mut parity = 0i64;
                for (j, &h) in space_indices.iter().enumerate() {
                    parity += (j as i64) * space.dual_degree(h).rem_euclid(2);
                }
                let sign = if parity % 2 == 0 { 1 } else { -1 };
                for (h_out, coeff) in space.iterated_product(&space_indices) {
                    bracket.push(BracketEntry {
                        inputs: inputs.clone(),
                        output: y_base + h_out,
                        coeff: &coeff * &crate::scalar::rat(sign),
                    });
                }
            }
            // Advance the per-color choice vector.
            let mut k = m;
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < per_color[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
        bracket.sort_by(|a, b| (&a.inputs, a.output).cmp(&(&b.inputs, b.output)));
    }
    let model = LInftyModel {
        m,
        n: g.n.clone(),
        dim_x: space.dim_x,
        space_name: space.name.clone(),
        fundamental_space: Some(space.fundamental),
        classes,
        bracket,
        trace_supported: space.trace_supported,
    };
    model.check_bracket_degrees()?;
    Ok(model)
}

fn nondecreasing_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; len];
    fn rec(n: usize, pos: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur[pos] = v;
            rec(n, pos + 1, v, cur, out);
        }
    }
    rec(n, 0, 0, &mut cur, &mut out);
    out
}

/// Result of removing the unit classes.
pub struct QuotUn {
    pub model: LInftyModel,
    pub warnings: Vec<String>,
}

/// Deletes the unit classes and every bracket term touching them.
pub fn quot_un(g: &LInftyModel) -> Result<QuotUn> {
    if !g.is_strongly_unital() {
        return Err(Error::Domain(
            "quot_un needs a unit class for every color".into(),
        ));
    }
    let keep: Vec<usize> = (0..g.classes.len())
        .filter(|&i| !g.is_unit_class(i))
        .collect();
    let mut new_index = vec![usize::MAX; g.classes.len()];
    for (new, &old) in keep.iter().enumerate() {
        new_index[old] = new;
    }
    let mut warnings = Vec::new();
    let classes: Vec<ModelClass> = keep.iter().map(|&i| g.classes[i].clone()).collect();
    for cls in &classes {
        if cls.c < 0 {
            warnings.push(format!(
                "strong unitality degree condition violated: class at c={} < 0 survives",
                cls.c
            ));
        }
    }
    let bracket = g
        .bracket
        .iter()
        .filter(|entry| {
            entry.inputs.iter().all(|&i| new_index[i] != usize::MAX)
                && new_index[entry.output] != usize::MAX
        })
        .map(|entry| BracketEntry {
            inputs: entry.inputs.iter().map(|&i| new_index[i]).collect(),
            output: new_index[entry.output],
            coeff: entry.coeff.clone(),
        })
        .collect();
    Ok(QuotUn {
        model: LInftyModel {
            classes,
            bracket,
            ..g.clone()
        },
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::space::space_by_name;

    fn nspec(parts: &[u32]) -> NSpec {
        NSpec::finite(parts.to_vec())
    }

    #[test]
    fn pointlike_conf_model() {
        // m=1, n=(2), d=1: u at gr 1 c 1, y at gr 2 c 2, l2(u,u) = y.
        let g = build_gmn(1, &nspec(&[2]), 1).unwrap();
        assert_eq!(g.classes.len(), 2);
        assert_eq!(g.classes[0].c, 1);
        assert_eq!(g.classes[0].gr, MultiDegree::new(vec![1]));
        assert_eq!(g.classes[1].c, 2);
        assert_eq!(g.classes[1].gr, MultiDegree::new(vec![2]));
        assert_eq!(g.bracket.len(), 1);
        assert_eq!(g.bracket[0].inputs, vec![0, 0]);
        assert_eq!(g.bracket[0].output, 1);
    }

    #[test]
    fn pointlike_infinite_has_no_bracket() {
        let g = build_gmn(2, &NSpec::all_infinite(2), 1).unwrap();
        assert_eq!(g.classes.len(), 2);
        assert!(g.bracket.is_empty());
    }

    #[test]
    fn pointlike_two_colors() {
        // m=2, n=(1,1), d=1: y at gr (1,1), c=2, l2(u1,u2)=y.
        let g = build_gmn(2, &nspec(&[1, 1]), 1).unwrap();
        assert_eq!(g.classes[2].c, 2);
        assert_eq!(g.classes[2].gr, MultiDegree::new(vec![1, 1]));
        assert_eq!(g.bracket[0].inputs, vec![0, 1]);
    }

    #[test]
    fn arity_below_two_is_rejected() {
        assert!(build_gmn(1, &nspec(&[1]), 1).is_err());
        assert!(build_gmn(1, &nspec(&[2]), 1).is_ok());
    }

    #[test]
    fn affine_tensor_is_abelian() {
        let a1 = space_by_name("A1").unwrap();
        let g = tensor_with_space(&a1, &build_gmn(1, &nspec(&[2]), 1).unwrap()).unwrap();
        assert_eq!(g.classes.len(), 2);
        // [X] (x) u at gr 1, c=-1, e=0; [X] (x) y at gr 2, c=0, e=-1.
        assert_eq!(g.classes[0].c, -1);
        assert_eq!(g.classes[0].e, Some(0));
        assert_eq!(g.classes[1].c, 0);
        assert_eq!(g.classes[1].e, Some(-1));
        assert!(g.bracket.is_empty());
        assert!(g.is_unit_class(0));
    }

    #[test]
    fn proj_line_tensor_brackets() {
        let p1 = space_by_name("P1").unwrap();
        let g = tensor_with_space(&p1, &build_gmn(1, &nspec(&[2]), 1).unwrap()).unwrap();
        assert_eq!(g.classes.len(), 4);
        // Classes: fund*u (c=-1, unit), theta*u (c=1), fund*y (c=0), theta*y (c=2).
        assert_eq!(g.classes[0].c, -1);
        assert!(g.is_unit_class(0));
        assert_eq!(g.classes[1].c, 1);
        assert_eq!(g.classes[2].c, 0);
        assert_eq!(g.classes[3].c, 2);
        // Cup products give l2(fund*u, theta*u) = fund*y and
        // l2(theta*u, theta*u) = theta*y.
        assert_eq!(g.bracket.len(), 2);
        assert_eq!(g.bracket[0].inputs, vec![0, 1]);
        assert_eq!(g.bracket[0].output, 2);
        assert_eq!(g.bracket[0].coeff, rat(1));
        assert_eq!(g.bracket[1].inputs, vec![1, 1]);
        assert_eq!(g.bracket[1].output, 3);
        g.check_bracket_degrees().unwrap();
    }

    #[test]
    fn quot_un_examples() {
        let a1 = space_by_name("A1").unwrap();
        let g = tensor_with_space(&a1, &build_gmn(1, &nspec(&[2]), 1).unwrap()).unwrap();
        let q = quot_un(&g).unwrap();
        assert!(q.warnings.is_empty());
        assert_eq!(q.model.classes.len(), 1);
        assert!(matches!(q.model.classes[0].kind, ClassKind::Y { .. }));

        let inf = build_gmn(2, &NSpec::all_infinite(2), 1).unwrap();
        let q = quot_un(&inf).unwrap();
        assert!(q.model.classes.is_empty());

        let p1 = space_by_name("P1").unwrap();
        let g = tensor_with_space(&p1, &build_gmn(1, &nspec(&[2]), 1).unwrap()).unwrap();
        let q = quot_un(&g).unwrap();
        assert_eq!(q.model.classes.len(), 3);
        // The theta*u self-bracket survives.
        assert_eq!(q.model.bracket.len(), 1);
    }

    #[test]
    fn genus_one_interleaving_signs() {
        // On a genus-1 curve the alpha/beta generators are odd; repeated odd
        // inputs are skipped and the mixed pair appears exactly once.
        let e = space_by_name("genus:1").unwrap();
        let g = tensor_with_space(&e, &build_gmn(1, &nspec(&[2]), 1).unwrap()).unwrap();
        g.check_bracket_degrees().unwrap();
        let ab: Vec<_> = g.bracket.iter().filter(|b| b.inputs == vec![1, 2]).collect();
        assert_eq!(ab.len(), 1);
        assert!(!g
            .bracket
            .iter()
            .any(|b| b.inputs == vec![1, 1] || b.inputs == vec![2, 2]));
    }

    #[test]
    fn permutation_transports_bracket() {
        let p1 = space_by_name("P1").unwrap();
        let g = tensor_with_space(&p1, &build_gmn(1, &nspec(&[2]), 1).unwrap()).unwrap();
        // Reverse the basis order.
        let n = g.classes.len();
        let perm: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
        let h = g.permute(&perm);
        h.check_bracket_degrees().unwrap();
        assert_eq!(h.classes[3].c, -1);
        // Permuting back recovers the original.
        let back = h.permute(&perm);
        assert_eq!(back, g);
    }
}
