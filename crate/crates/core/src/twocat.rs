//! Finite strict 2-categories and strict monoidal categories.

use std::collections::{BTreeMap, HashMap};

use crate::category::{validate_category, FiniteCategory};
use crate::report::ValidationReport;
use crate::{Error, Result};

/// A finite strict 2-category.
///
/// Composition tables are keyed `(later, earlier)`: `compose1[(g, f)] = g ∘ f`,
/// `vcomp[(b, a)] = b ∘ a` and `hcomp[(b, a)] = b □ a`, where `a` lives over
/// the first 1-cell and `b` over the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finite2Category {
    pub objects: usize,
    pub one_cells: Vec<(usize, usize)>,
    pub two_cells: Vec<(usize, usize)>,
    pub compose1: BTreeMap<(usize, usize), usize>,
    pub vcomp: BTreeMap<(usize, usize), usize>,
    pub hcomp: BTreeMap<(usize, usize), usize>,
    pub id1: Vec<usize>,
    pub id2: Vec<usize>,
}

impl Finite2Category {
    /// A 1-category seen as a 2-category with identity 2-cells only.
    pub fn from_category(c: &FiniteCategory) -> Self {
        let m = c.morphisms.len();
        Self {
            objects: c.objects,
            one_cells: c.morphisms.clone(),
            two_cells: (0..m).map(|f| (f, f)).collect(),
            compose1: c.compose.clone(),
            vcomp: (0..m).map(|f| ((f, f), f)).collect(),
            hcomp: c.compose.clone(),
            id1: c.ids.clone(),
            id2: (0..m).collect(),
        }
    }

    pub fn terminal() -> Self {
        Self::from_category(&FiniteCategory::terminal())
    }

    pub fn src1(&self, f: usize) -> usize {
        self.one_cells[f].0
    }

    pub fn tgt1(&self, f: usize) -> usize {
        self.one_cells[f].1
    }

    pub fn src2(&self, a: usize) -> usize {
        self.two_cells[a].0
    }

    pub fn tgt2(&self, a: usize) -> usize {
        self.two_cells[a].1
    }

    pub fn id1(&self, x: usize) -> usize {
        self.id1[x]
    }

    pub fn id2(&self, f: usize) -> usize {
        self.id2[f]
    }

    /// `g ∘ f`. Panics on a non-composable pair; callers guarantee typing.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose1[&(g, f)]
    }

    pub fn try_comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose1.get(&(g, f)).copied()
    }

    pub fn vert(&self, b: usize, a: usize) -> usize {
        self.vcomp[&(b, a)]
    }

    pub fn try_vert(&self, b: usize, a: usize) -> Option<usize> {
        self.vcomp.get(&(b, a)).copied()
    }

    pub fn horiz(&self, b: usize, a: usize) -> usize {
        self.hcomp[&(b, a)]
    }

    pub fn try_horiz(&self, b: usize, a: usize) -> Option<usize> {
        self.hcomp.get(&(b, a)).copied()
    }

    /// `b □ 1_f`
    pub fn whisker_right(&self, b: usize, f: usize) -> usize {
        self.horiz(b, self.id2(f))
    }

    /// `1_g □ a`
    pub fn whisker_left(&self, g: usize, a: usize) -> usize {
        self.horiz(self.id2(g), a)
    }

    /// 2-cells `f ⇒ g`.
    pub fn two_cells_between(&self, f: usize, g: usize) -> Vec<usize> {
        (0..self.two_cells.len())
            .filter(|&a| self.two_cells[a] == (f, g))
            .collect()
    }

    pub fn two_cells_from(&self) -> HashMap<usize, Vec<usize>> {
        let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
        for (a, &(s, _)) in self.two_cells.iter().enumerate() {
            out.entry(s).or_default().push(a);
        }
        out
    }

    pub fn one_cells_from(&self, x: usize) -> Vec<usize> {
        (0..self.one_cells.len()).filter(|&f| self.src1(f) == x).collect()
    }

    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.objects, self.one_cells.len(), self.two_cells.len())
    }

    pub fn check_shape(&self) -> Result<()> {
        let (n, m, k) = self.sizes();
        let bad = self.one_cells.iter().any(|&(s, t)| s >= n || t >= n)
            || self.two_cells.iter().any(|&(s, t)| s >= m || t >= m)
            || self.id1.len() != n
            || self.id2.len() != m
            || self.id1.iter().any(|&f| f >= m)
            || self.id2.iter().any(|&a| a >= k)
            || self.compose1.iter().any(|(&(g, f), &h)| g >= m || f >= m || h >= m)
            || self
                .vcomp
                .iter()
                .chain(self.hcomp.iter())
                .any(|(&(b, a), &c)| b >= k || a >= k || c >= k);
        if bad {
            Err(Error::malformed("2-category table entry out of range"))
        } else {
            Ok(())
        }
    }

    /// The underlying 1-category, forgetting 2-cells.
    pub fn underlying(&self) -> FiniteCategory {
        FiniteCategory {
            objects: self.objects,
            morphisms: self.one_cells.clone(),
            compose: self.compose1.clone(),
            ids: self.id1.clone(),
        }
    }
}

pub fn validate_2category(c: &Finite2Category) -> ValidationReport {
    let mut report = ValidationReport::new();
    if let Err(e) = c.check_shape() {
        report.push("shape", e.to_string());
        return report;
    }
    report.extend(validate_category(&c.underlying()));
    let (_, m, k) = c.sizes();
    for f in 0..m {
        if c.two_cells[c.id2(f)] != (f, f) {
            report.push("2-identity typing", format!("id2 of 1-cell {f}"));
        }
    }
    // vertical typing and totality
    for b in 0..k {
        for a in 0..k {
            let composable = c.tgt2(a) == c.src2(b);
            match (composable, c.try_vert(b, a)) {
                (true, None) => report.push("vertical total", format!("{b} ∘ {a} missing")),
                (false, Some(_)) => report.push("vertical typing", format!("{b} ∘ {a} not composable")),
                (true, Some(d)) if c.two_cells[d] != (c.src2(a), c.tgt2(b)) => {
                    report.push("vertical typing", format!("{b} ∘ {a} = {d}"))
                }
                _ => {}
            }
        }
    }
    // horizontal typing and totality
    for b in 0..k {
        for a in 0..k {
            let composable = c.tgt1(c.src2(a)) == c.src1(c.src2(b));
            match (composable, c.try_horiz(b, a)) {
                (true, None) => report.push("horizontal total", format!("{b} □ {a} missing")),
                (false, Some(_)) => {
                    report.push("horizontal typing", format!("{b} □ {a} not composable"))
                }
                (true, Some(d)) => {
                    let want = (
                        c.try_comp(c.src2(b), c.src2(a)),
                        c.try_comp(c.tgt2(b), c.tgt2(a)),
                    );
                    if want != (Some(c.src2(d)), Some(c.tgt2(d))) {
                        report.push("horizontal typing", format!("{b} □ {a} = {d}"));
                    }
                }
                _ => {}
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    for a in 0..k {
        let (f, g) = c.two_cells[a];
        if c.vert(a, c.id2(f)) != a || c.vert(c.id2(g), a) != a {
            report.push("vertical unit", format!("2-cell {a}"));
        }
        let (x, y) = c.one_cells[f];
        if c.horiz(a, c.id2(c.id1(x))) != a || c.horiz(c.id2(c.id1(y)), a) != a {
            report.push("horizontal unit", format!("2-cell {a}"));
        }
    }
    for (&(g, f), &gf) in &c.compose1 {
        if c.horiz(c.id2(g), c.id2(f)) != c.id2(gf) {
            report.push("identity 2-cells compose", format!("1-cells {g}, {f}"));
        }
    }
    let from = c.two_cells_from();
    let empty = Vec::new();
    // vertical associativity
    for a in 0..k {
        for &b in from.get(&c.tgt2(a)).unwrap_or(&empty) {
            let ba = c.vert(b, a);
            for &d in from.get(&c.tgt2(b)).unwrap_or(&empty) {
                if c.vert(c.vert(d, b), a) != c.vert(d, ba) {
                    report.push("vertical associativity", format!("2-cells {d}, {b}, {a}"));
                }
            }
        }
    }
    // horizontal associativity and interchange
    let by_src_obj: HashMap<usize, Vec<usize>> = {
        let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
        for a in 0..k {
            out.entry(c.src1(c.src2(a))).or_default().push(a);
        }
        out
    };
    for a in 0..k {
        let next = by_src_obj.get(&c.tgt1(c.src2(a))).unwrap_or(&empty);
        for &b in next {
            let ba = c.horiz(b, a);
            for &d in by_src_obj.get(&c.tgt1(c.src2(b))).unwrap_or(&empty) {
                if c.horiz(c.horiz(d, b), a) != c.horiz(d, ba) {
                    report.push("horizontal associativity", format!("2-cells {d}, {b}, {a}"));
                }
            }
            // (b' ∘ b) □ (a' ∘ a) = (b' □ a') ∘ (b □ a)
            for &a2 in from.get(&c.tgt2(a)).unwrap_or(&empty) {
                for &b2 in from.get(&c.tgt2(b)).unwrap_or(&empty) {
                    let lhs = c.horiz(c.vert(b2, b), c.vert(a2, a));
                    let rhs = c.vert(c.horiz(b2, a2), ba);
                    if lhs != rhs {
                        report.push(
                            "interchange",
                            format!("a={a}, a'={a2}, b={b}, b'={b2}: {lhs} != {rhs}"),
                        );
                    }
                }
            }
        }
    }
    report
}

/// A strict monoidal category on a finite category.
///
/// `tensor_obj[x][y] = x ⊗ y` and `tensor_mor[f][g] = f ⊗ g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictMonCat {
    pub category: FiniteCategory,
    pub tensor_obj: Vec<Vec<usize>>,
    pub unit: usize,
    pub tensor_mor: Vec<Vec<usize>>,
}

impl StrictMonCat {
    /// A discrete monoidal category from a finite monoid table.
    pub fn discrete_monoid(table: Vec<Vec<usize>>, unit: usize) -> Self {
        let n = table.len();
        Self {
            category: FiniteCategory::discrete(n),
            tensor_mor: table.clone(),
            tensor_obj: table,
            unit,
        }
    }

    /// The cyclic group ℤ/n as a discrete monoidal category.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::discrete_monoid(table, 0)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn is_discrete(&self) -> bool {
        self.category.morphisms.len() == self.category.objects
    }

    pub fn check_shape(&self) -> Result<()> {
        self.category.check_shape()?;
        let n = self.category.objects;
        let m = self.category.morphisms.len();
        let square = |t: &Vec<Vec<usize>>, size: usize| {
            t.len() == size && t.iter().all(|row| row.len() == size && row.iter().all(|&v| v < size))
        };
        if !square(&self.tensor_obj, n) || !square(&self.tensor_mor, m) || self.unit >= n {
            return Err(Error::malformed("tensor tables must be square and in range"));
        }
        Ok(())
    }
}

pub fn validate_moncat(m: &StrictMonCat) -> ValidationReport {
    let mut report = ValidationReport::new();
    if let Err(e) = m.check_shape() {
        report.push("shape", e.to_string());
        return report;
    }
    let c = &m.category;
    report.extend(validate_category(c));
    if !report.is_valid() {
        return report;
    }
    let (n, k) = (c.objects, c.morphisms.len());
    let t = &m.tensor_obj;
    let tm = &m.tensor_mor;
    for x in 0..n {
        if t[m.unit][x] != x || t[x][m.unit] != x {
            report.push("tensor unit on objects", format!("object {x}"));
        }
        for y in 0..n {
            if tm[c.id(x)][c.id(y)] != c.id(t[x][y]) {
                report.push("tensor preserves identities", format!("objects {x}, {y}"));
            }
            for z in 0..n {
                if t[t[x][y]][z] != t[x][t[y][z]] {
                    report.push("tensor associativity on objects", format!("{x}, {y}, {z}"));
                }
            }
        }
    }
    let iu = c.id(m.unit);
    for f in 0..k {
        if tm[iu][f] != f || tm[f][iu] != f {
            report.push("tensor unit on morphisms", format!("morphism {f}"));
        }
        for g in 0..k {
            let fg = tm[f][g];
            let want = (t[c.src(f)][c.src(g)], t[c.tgt(f)][c.tgt(g)]);
            if c.morphisms[fg] != want {
                report.push("tensor typing", format!("{f} ⊗ {g} = {fg}"));
            }
            for h in 0..k {
                if tm[tm[f][g]][h] != tm[f][tm[g][h]] {
                    report.push("tensor associativity on morphisms", format!("{f}, {g}, {h}"));
                }
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    // (f ∘ h) ⊗ (g ∘ k) = (f ⊗ g) ∘ (h ⊗ k)
    for (&(f, h), &fh) in &c.compose {
        for (&(g, kk), &gk) in &c.compose {
            let lhs = tm[fh][gk];
            let rhs = c.comp(tm[f][g], tm[h][kk]);
            if rhs != Some(lhs) {
                report.push(
                    "tensor functoriality",
                    format!("f={f}, h={h}, g={g}, k={kk}"),
                );
            }
        }
    }
    report
}

/// One object; 1-cells are objects of `m` composed by ⊗, 2-cells are
/// morphisms of `m` with □ = ⊗.
pub fn deloop(m: &StrictMonCat) -> Result<Finite2Category> {
    validate_moncat(m).into_result("monoidal category")?;
    let c = &m.category;
    let (n, k) = (c.objects, c.morphisms.len());
    let mut compose1 = BTreeMap::new();
    for g in 0..n {
        for f in 0..n {
            compose1.insert((g, f), m.tensor_obj[g][f]);
        }
    }
    let mut hcomp = BTreeMap::new();
    for b in 0..k {
        for a in 0..k {
            hcomp.insert((b, a), m.tensor_mor[b][a]);
        }
    }
    Ok(Finite2Category {
        objects: 1,
        one_cells: vec![(0, 0); n],
        two_cells: c.morphisms.clone(),
        compose1,
        vcomp: c.compose.clone(),
        hcomp,
        id1: vec![m.unit],
        id2: c.ids.clone(),
    })
}

/// A 1-cell of the lax slice sum: `(f, α) : h → g` with `α : g ∘ f ⇒ h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SliceArrow {
    pub h: usize,
    pub g: usize,
    pub f: usize,
    pub alpha: usize,
}

/// The lax slice sum together with the labels of its cells.
#[derive(Clone, Debug)]
pub struct LaxSlice {
    pub category: Finite2Category,
    /// 1-cells of the sum, indexed like `category.one_cells`.
    pub arrows: Vec<SliceArrow>,
    /// Underlying 2-cell of `C` for each 2-cell of the sum.
    pub two_cell_base: Vec<usize>,
    pub arrow_index: HashMap<SliceArrow, usize>,
    /// `(source arrow, target arrow, γ) -> 2-cell`.
    pub two_cell_index: HashMap<(usize, usize, usize), usize>,
}

/// The coproduct over objects `x` of the lax slices over `x`.
pub fn lax_slice_sum(c: &Finite2Category) -> Result<LaxSlice> {
    validate_2category(c).into_result("2-category")?;
    let m = c.one_cells.len();
    let mut arrows = Vec::new();
    for h in 0..m {
        for g in (0..m).filter(|&g| c.tgt1(g) == c.tgt1(h)) {
            for f in (0..m).filter(|&f| c.src1(f) == c.src1(h) && c.tgt1(f) == c.src1(g)) {
                for alpha in c.two_cells_between(c.comp(g, f), h) {
                    arrows.push(SliceArrow { h, g, f, alpha });
                }
            }
        }
    }
    let arrow_index: HashMap<SliceArrow, usize> =
        arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();

    let mut two_cells = Vec::new();
    let mut two_cell_base = Vec::new();
    for (s, sa) in arrows.iter().enumerate() {
        for (t, ta) in arrows.iter().enumerate() {
            if (sa.h, sa.g) != (ta.h, ta.g) {
                continue;
            }
            for gamma in c.two_cells_between(sa.f, ta.f) {
                if c.vert(ta.alpha, c.whisker_left(sa.g, gamma)) == sa.alpha {
                    two_cells.push((s, t));
                    two_cell_base.push(gamma);
                }
            }
        }
    }
    let two_cell_index: HashMap<(usize, usize, usize), usize> = two_cells
        .iter()
        .zip(&two_cell_base)
        .enumerate()
        .map(|(i, (&(s, t), &g))| ((s, t, g), i))
        .collect();

    let lookup = |s: usize, t: usize, g: usize| -> Result<usize> {
        two_cell_index
            .get(&(s, t, g))
            .copied()
            .ok_or_else(|| Error::internal(format!("slice 2-cell ({s},{t},{g}) missing")))
    };

    let compose_arrows = |second: &SliceArrow, first: &SliceArrow| -> SliceArrow {
        // first: h -> g, second: g -> k
        SliceArrow {
            h: first.h,
            g: second.g,
            f: c.comp(second.f, first.f),
            alpha: c.vert(first.alpha, c.whisker_right(second.alpha, first.f)),
        }
    };

    let mut compose1 = BTreeMap::new();
    for (i, a) in arrows.iter().enumerate() {
        for (j, b) in arrows.iter().enumerate() {
            if b.h == a.g {
                let comp = compose_arrows(b, a);
                let idx = arrow_index
                    .get(&comp)
                    .ok_or_else(|| Error::internal("slice composite missing"))?;
                compose1.insert((j, i), *idx);
            }
        }
    }
    let mut vcomp = BTreeMap::new();
    for (i, &(s, t)) in two_cells.iter().enumerate() {
        for (j, &(s2, t2)) in two_cells.iter().enumerate() {
            if s2 == t {
                let g = c.vert(two_cell_base[j], two_cell_base[i]);
                vcomp.insert((j, i), lookup(s, t2, g)?);
            }
        }
    }
    let mut hcomp = BTreeMap::new();
    for (i, &(s, t)) in two_cells.iter().enumerate() {
        for (j, &(s2, t2)) in two_cells.iter().enumerate() {
            if arrows[s2].h == arrows[s].g {
                let src = compose1[&(s2, s)];
                let tgt = compose1[&(t2, t)];
                let g = c.horiz(two_cell_base[j], two_cell_base[i]);
                hcomp.insert((j, i), lookup(src, tgt, g)?);
            }
        }
    }
    let id1 = (0..m)
        .map(|h| {
            let a = SliceArrow {
                h,
                g: h,
                f: c.id1(c.src1(h)),
                alpha: c.id2(h),
            };
            arrow_index[&a]
        })
        .collect();
    let id2 = (0..arrows.len())
        .map(|s| lookup(s, s, c.id2(arrows[s].f)))
        .collect::<Result<Vec<_>>>()?;
    let category = Finite2Category {
        objects: m,
        one_cells: arrows.iter().map(|a| (a.h, a.g)).collect(),
        two_cells,
        compose1,
        vcomp,
        hcomp,
        id1,
        id2,
    };
    Ok(LaxSlice {
        category,
        arrows,
        two_cell_base,
        arrow_index,
        two_cell_index,
    })
}

/// A strict 2-functor between finite 2-categories.
#[derive(Clone, Debug)]
pub struct Functor2 {
    pub on_objects: Vec<usize>,
    pub on_one_cells: Vec<usize>,
    pub on_two_cells: Vec<usize>,
}

impl Functor2 {
    pub fn validate(&self, c: &Finite2Category, d: &Finite2Category) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (n, m, k) = c.sizes();
        if self.on_objects.len() != n || self.on_one_cells.len() != m || self.on_two_cells.len() != k {
            report.push("shape", "functor tables do not match the source");
            return report;
        }
        let (n2, m2, k2) = d.sizes();
        if self.on_objects.iter().any(|&x| x >= n2)
            || self.on_one_cells.iter().any(|&x| x >= m2)
            || self.on_two_cells.iter().any(|&x| x >= k2)
        {
            report.push("shape", "functor value out of range");
            return report;
        }
        let (fo, f1, f2) = (&self.on_objects, &self.on_one_cells, &self.on_two_cells);
        for f in 0..m {
            if d.one_cells[f1[f]] != (fo[c.src1(f)], fo[c.tgt1(f)]) {
                report.push("1-cell typing", format!("1-cell {f}"));
            }
            if f2[c.id2(f)] != d.id2(f1[f]) {
                report.push("preserves 2-identities", format!("1-cell {f}"));
            }
        }
        for x in 0..n {
            if f1[c.id1(x)] != d.id1(fo[x]) {
                report.push("preserves 1-identities", format!("object {x}"));
            }
        }
        for a in 0..k {
            if d.two_cells[f2[a]] != (f1[c.src2(a)], f1[c.tgt2(a)]) {
                report.push("2-cell typing", format!("2-cell {a}"));
            }
        }
        if !report.is_valid() {
            return report;
        }
        for (&(g, f), &h) in &c.compose1 {
            if d.comp(f1[g], f1[f]) != f1[h] {
                report.push("preserves ∘ on 1-cells", format!("{g}, {f}"));
            }
        }
        for (&(b, a), &e) in &c.vcomp {
            if d.vert(f2[b], f2[a]) != f2[e] {
                report.push("preserves vertical composition", format!("{b}, {a}"));
            }
        }
        for (&(b, a), &e) in &c.hcomp {
            if d.horiz(f2[b], f2[a]) != f2[e] {
                report.push("preserves horizontal composition", format!("{b}, {a}"));
            }
        }
        report
    }

    /// The induced functor between lax slice sums.
    pub fn on_lax_slices(&self, c: &LaxSlice, d: &LaxSlice) -> Result<Functor2> {
        let f1 = &self.on_one_cells;
        let f2 = &self.on_two_cells;
        let on_one_cells = c
            .arrows
            .iter()
            .map(|a| {
                let image = SliceArrow {
                    h: f1[a.h],
                    g: f1[a.g],
                    f: f1[a.f],
                    alpha: f2[a.alpha],
                };
                d.arrow_index
                    .get(&image)
                    .copied()
                    .ok_or_else(|| Error::internal("image slice arrow missing"))
            })
            .collect::<Result<Vec<_>>>()?;
        let on_two_cells = c
            .category
            .two_cells
            .iter()
            .zip(&c.two_cell_base)
            .map(|(&(s, t), &g)| {
                d.two_cell_index
                    .get(&(on_one_cells[s], on_one_cells[t], f2[g]))
                    .copied()
                    .ok_or_else(|| Error::internal("image slice 2-cell missing"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Functor2 {
            on_objects: f1.clone(),
            on_one_cells,
            on_two_cells,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_cat() -> FiniteCategory {
        FiniteCategory {
            objects: 2,
            morphisms: vec![(0, 0), (1, 1), (0, 1)],
            compose: [((0, 0), 0), ((1, 1), 1), ((2, 0), 2), ((1, 2), 2)].into_iter().collect(),
            ids: vec![0, 1],
        }
    }

    #[test]
    fn terminal_is_valid() {
        assert!(validate_2category(&Finite2Category::terminal()).is_valid());
    }

    #[test]
    fn deloop_cyclic_is_valid() {
        let c = deloop(&StrictMonCat::cyclic(2)).unwrap();
        assert!(validate_2category(&c).is_valid());
        assert_eq!(c.sizes(), (1, 2, 2));
        assert_eq!(deloop(&StrictMonCat::trivial()).unwrap(), Finite2Category::terminal());
    }

    /// One object whose endomorphisms form ℤ/2, tensored by multiplication.
    fn endo_z2() -> StrictMonCat {
        StrictMonCat {
            category: FiniteCategory {
                objects: 1,
                morphisms: vec![(0, 0), (0, 0)],
                compose: [((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 0)].into_iter().collect(),
                ids: vec![0],
            },
            tensor_obj: vec![vec![0]],
            unit: 0,
            tensor_mor: vec![vec![0, 1], vec![1, 0]],
        }
    }

    #[test]
    fn mutated_interchange_is_named() {
        let mut c = deloop(&endo_z2()).unwrap();
        assert!(validate_2category(&c).is_valid());
        c.hcomp.insert((1, 1), 1);
        let report = validate_2category(&c);
        assert!(report.mentions("interchange"), "{report}");
        assert!(report.mentions("a=1, a'=0, b=0, b'=1"), "{report}");
    }

    #[test]
    fn cyclic_moncat_valid_and_mutation_named() {
        assert!(validate_moncat(&StrictMonCat::cyclic(3)).is_valid());
        assert!(validate_moncat(&StrictMonCat::trivial()).is_valid());
        let mut m = StrictMonCat::cyclic(3);
        m.tensor_mor[1][2] = 1;
        assert!(!validate_moncat(&m).is_valid());
    }

    #[test]
    fn lax_slice_of_terminal_is_terminal() {
        let s = lax_slice_sum(&Finite2Category::terminal()).unwrap();
        assert_eq!(s.category.sizes(), (1, 1, 1));
    }

    #[test]
    fn lax_slice_of_cyclic_group() {
        let c = deloop(&StrictMonCat::cyclic(2)).unwrap();
        let s = lax_slice_sum(&c).unwrap();
        assert_eq!(s.category.sizes(), (2, 4, 4));
        assert!(validate_2category(&s.category).is_valid());
    }

    #[test]
    fn lax_slice_of_arrow_matches_slice_coproduct() {
        let c = Finite2Category::from_category(&arrow_cat());
        let s = lax_slice_sum(&c).unwrap();
        assert!(validate_2category(&s.category).is_valid());
        // slices: C/0 has {id0}; C/1 has {u, id1} with one arrow u -> id1
        // plus identities. 3 objects, 4 arrows.
        assert_eq!(s.category.sizes(), (3, 4, 4));
    }

    #[test]
    fn identity_functor_is_valid() {
        let c = deloop(&StrictMonCat::cyclic(3)).unwrap();
        let id = Functor2 {
            on_objects: vec![0],
            on_one_cells: (0..3).collect(),
            on_two_cells: (0..3).collect(),
        };
        assert!(id.validate(&c, &c).is_valid());
    }
}
