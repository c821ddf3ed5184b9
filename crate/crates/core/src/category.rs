//! Finite 1-categories as explicit tables.

use std::collections::BTreeMap;

use crate::report::ValidationReport;
use crate::{Error, Result};

/// Objects are `0..objects`, morphisms are `0..morphisms.len()`, and
/// `compose[(g, f)]` is `g ∘ f` for every composable pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: usize,
    pub morphisms: Vec<(usize, usize)>,
    pub compose: BTreeMap<(usize, usize), usize>,
    pub ids: Vec<usize>,
}

impl FiniteCategory {
    /// One object, only its identity.
    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        Self {
            objects: n,
            morphisms: (0..n).map(|x| (x, x)).collect(),
            compose: (0..n).map(|x| ((x, x), x)).collect(),
            ids: (0..n).collect(),
        }
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].0
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].1
    }

    pub fn id(&self, x: usize) -> usize {
        self.ids[x]
    }

    /// `g ∘ f`, when composable.
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f] == (x, y))
            .collect()
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.ids.get(self.src(f)) == Some(&f)
    }

    /// Range checks only.
    pub fn check_shape(&self) -> Result<()> {
        let m = self.morphisms.len();
        if self.ids.len() != self.objects {
            return Err(Error::malformed("one identity per object required"));
        }
        if self.morphisms.iter().any(|&(s, t)| s >= self.objects || t >= self.objects) {
            return Err(Error::malformed("morphism endpoint out of range"));
        }
        if self.ids.iter().any(|&i| i >= m) {
            return Err(Error::malformed("identity out of range"));
        }
        if self
            .compose
            .iter()
            .any(|(&(g, f), &h)| g >= m || f >= m || h >= m)
        {
            return Err(Error::malformed("composition entry out of range"));
        }
        Ok(())
    }

    /// Morphisms reordered by `(src, tgt)`, stable inside each hom-set.
    /// Returns the new category and `perm[old] = new`.
    pub fn canonical(&self) -> (FiniteCategory, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.morphisms.len()).collect();
        order.sort_by_key(|&f| self.morphisms[f]);
        let mut perm = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        (self.relabel(&perm), perm)
    }

    /// Applies `perm[old] = new` to morphism labels.
    pub fn relabel(&self, perm: &[usize]) -> FiniteCategory {
        let mut morphisms = vec![(0, 0); self.morphisms.len()];
        for (old, &st) in self.morphisms.iter().enumerate() {
            morphisms[perm[old]] = st;
        }
        FiniteCategory {
            objects: self.objects,
            morphisms,
            compose: self
                .compose
                .iter()
                .map(|(&(g, f), &h)| ((perm[g], perm[f]), perm[h]))
                .collect(),
            ids: self.ids.iter().map(|&i| perm[i]).collect(),
        }
    }
}

pub fn validate_category(c: &FiniteCategory) -> ValidationReport {
    let mut report = ValidationReport::new();
    if let Err(e) = c.check_shape() {
        report.push("shape", e.to_string());
        return report;
    }
    let m = c.morphisms.len();
    for (x, &i) in c.ids.iter().enumerate() {
        if c.morphisms[i] != (x, x) {
            report.push("identity typing", format!("id of object {x} is morphism {i}"));
        }
    }
    for g in 0..m {
        for f in 0..m {
            let composable = c.tgt(f) == c.src(g);
            match (composable, c.comp(g, f)) {
                (true, None) => report.push("composition total", format!("{g} ∘ {f} missing")),
                (false, Some(_)) => {
                    report.push("composition typing", format!("{g} ∘ {f} defined but not composable"))
                }
                (true, Some(h)) if c.morphisms[h] != (c.src(f), c.tgt(g)) => {
                    report.push("composition typing", format!("{g} ∘ {f} = {h} has wrong endpoints"))
                }
                _ => {}
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    for f in 0..m {
        if c.comp(c.id(c.tgt(f)), f) != Some(f) || c.comp(f, c.id(c.src(f))) != Some(f) {
            report.push("unit law", format!("morphism {f}"));
        }
    }
    for f in 0..m {
        for g in (0..m).filter(|&g| c.src(g) == c.tgt(f)) {
            let gf = c.compose[&(g, f)];
            for h in (0..m).filter(|&h| c.src(h) == c.tgt(g)) {
                let lhs = c.compose[&(c.compose[&(h, g)], f)];
                let rhs = c.compose[&(h, gf)];
                if lhs != rhs {
                    report.push("associativity", format!("({h} ∘ {g}) ∘ {f} = {lhs}, {h} ∘ ({g} ∘ {f}) = {rhs}"));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> FiniteCategory {
        // id0, id1, u: 0 -> 1
        FiniteCategory {
            objects: 2,
            morphisms: vec![(0, 0), (1, 1), (0, 1)],
            compose: [((0, 0), 0), ((1, 1), 1), ((2, 0), 2), ((1, 2), 2)].into_iter().collect(),
            ids: vec![0, 1],
        }
    }

    #[test]
    fn arrow_is_valid() {
        assert!(validate_category(&arrow()).is_valid());
        assert!(validate_category(&FiniteCategory::discrete(3)).is_valid());
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut c = arrow();
        c.compose.remove(&(1, 2));
        assert!(validate_category(&c).mentions("composition total"));
    }

    #[test]
    fn canonical_sorts_by_endpoints() {
        let c = FiniteCategory {
            objects: 2,
            morphisms: vec![(0, 1), (1, 1), (0, 0)],
            compose: [((2, 2), 2), ((1, 1), 1), ((0, 2), 0), ((1, 0), 0)].into_iter().collect(),
            ids: vec![2, 1],
        };
        assert!(validate_category(&c).is_valid());
        let (canon, perm) = c.canonical();
        assert_eq!(canon.morphisms, vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(perm, vec![1, 2, 0]);
        assert!(validate_category(&canon).is_valid());
    }
}
