//! Finite truncated simplicial sets stored as dense face and degeneracy tables.
//!
//! Cells at each level are the integers `0..cells[k]`. Every structure handled
//! by this crate is 4-coskeletal, so nothing above level 4 is ever stored;
//! higher levels are rebuilt on demand with [`coskeleton_extend`].

use std::collections::HashMap;

use crate::report::ValidationReport;
use crate::{Error, Result};

pub const MAX_LEVEL: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSimplicialSet {
    max_level: usize,
    cells: Vec<usize>,
    /// `face[k][i][x]`, defined for `1 <= k <= max_level`; `face[0]` is empty.
    face: Vec<Vec<Vec<usize>>>,
    /// `degen[k][j][x]`, defined for `k < max_level`.
    degen: Vec<Vec<Vec<usize>>>,
}

impl TruncatedSimplicialSet {
    /// Checks table shapes and ranges. Simplicial identities are *not*
    /// checked here; see [`validate_simplicial`].
    pub fn new(
        max_level: usize,
        cells: Vec<usize>,
        face: Vec<Vec<Vec<usize>>>,
        degen: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if max_level > MAX_LEVEL {
            return Err(Error::malformed(format!(
                "max_level {max_level} exceeds the cap of {MAX_LEVEL}"
            )));
        }
        if cells.len() != max_level + 1 {
            return Err(Error::malformed(format!(
                "expected {} cell counts, found {}",
                max_level + 1,
                cells.len()
            )));
        }
        if face.len() != max_level + 1 || degen.len() != max_level {
            return Err(Error::malformed(
                "face needs one entry per level and degen one per level below the top",
            ));
        }
        if !face[0].is_empty() {
            return Err(Error::malformed("level 0 has no faces"));
        }
        for k in 1..=max_level {
            if face[k].len() != k + 1 {
                return Err(Error::malformed(format!("level {k} needs {} faces", k + 1)));
            }
            for (i, map) in face[k].iter().enumerate() {
                check_map(map, cells[k], cells[k - 1], &format!("face[{k}][{i}]"))?;
            }
        }
        for k in 0..max_level {
            if degen[k].len() != k + 1 {
                return Err(Error::malformed(format!(
                    "level {k} needs {} degeneracies",
                    k + 1
                )));
            }
            for (j, map) in degen[k].iter().enumerate() {
                check_map(map, cells[k], cells[k + 1], &format!("degen[{k}][{j}]"))?;
            }
        }
        Ok(Self {
            max_level,
            cells,
            face,
            degen,
        })
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn size(&self, level: usize) -> usize {
        self.cells[level]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cells.clone()
    }

    /// `d_i` applied to the level-`level` cell `x`.
    pub fn face(&self, level: usize, i: usize, x: usize) -> usize {
        self.face[level][i][x]
    }

    /// `s_j` applied to the level-`level` cell `x`.
    pub fn degen(&self, level: usize, j: usize, x: usize) -> usize {
        self.degen[level][j][x]
    }

    pub fn face_table(&self, level: usize, i: usize) -> &[usize] {
        &self.face[level][i]
    }

    pub fn degen_table(&self, level: usize, j: usize) -> &[usize] {
        &self.degen[level][j]
    }

    pub fn faces_of(&self, level: usize, x: usize) -> Vec<usize> {
        (0..=level).map(|i| self.face[level][i][x]).collect()
    }

    /// Whether `x` lies in the image of some degeneracy.
    pub fn is_degenerate(&self, level: usize, x: usize) -> bool {
        level > 0 && self.degen[level - 1].iter().any(|map| map.contains(&x))
    }

    /// Restriction to levels `0..=n`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.max_level {
            return Err(Error::Precondition(format!(
                "cannot truncate a {}-truncated set at {n}",
                self.max_level
            )));
        }
        Ok(Self {
            max_level: n,
            cells: self.cells[..=n].to_vec(),
            face: self.face[..=n].to_vec(),
            degen: self.degen[..n].to_vec(),
        })
    }

    /// Map from face tuples to the cells with exactly those faces.
    pub fn face_index(&self, level: usize) -> HashMap<Vec<usize>, Vec<usize>> {
        let mut index: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for x in 0..self.cells[level] {
            index.entry(self.faces_of(level, x)).or_default().push(x);
        }
        index
    }

    /// The `max_level`-truncation of the standard simplex Δ^k. Cells at level
    /// m are the nondecreasing sequences of length m+1 in `0..=k`, in
    /// lexicographic order.
    pub fn standard_simplex(k: usize, max_level: usize) -> Result<Self> {
        let seqs: Vec<Vec<Vec<usize>>> = (0..=max_level)
            .map(|m| nondecreasing_sequences(m + 1, k))
            .collect();
        let lookup: Vec<HashMap<Vec<usize>, usize>> = seqs
            .iter()
            .map(|level| level.iter().enumerate().map(|(n, s)| (s.clone(), n)).collect())
            .collect();
        let mut face = vec![Vec::new()];
        for m in 1..=max_level {
            let maps = (0..=m)
                .map(|i| {
                    seqs[m]
                        .iter()
                        .map(|s| {
                            let mut t = s.clone();
                            t.remove(i);
                            lookup[m - 1][&t]
                        })
                        .collect()
                })
                .collect();
            face.push(maps);
        }
        let mut degen = Vec::new();
        for m in 0..max_level {
            let maps = (0..=m)
                .map(|j| {
                    seqs[m]
                        .iter()
                        .map(|s| {
                            let mut t = s.clone();
                            t.insert(j, s[j]);
                            lookup[m + 1][&t]
                        })
                        .collect()
                })
                .collect();
            degen.push(maps);
        }
        let cells = seqs.iter().map(Vec::len).collect();
        Self::new(max_level, cells, face, degen)
    }
}

fn check_map(map: &[usize], domain: usize, codomain: usize, name: &str) -> Result<()> {
    if map.len() != domain {
        return Err(Error::malformed(format!(
            "{name} has {} entries, expected {domain}",
            map.len()
        )));
    }
    if let Some(bad) = map.iter().find(|&&y| y >= codomain) {
        return Err(Error::malformed(format!(
            "{name} points at {bad}, outside 0..{codomain}"
        )));
    }
    Ok(())
}

fn nondecreasing_sequences(len: usize, top: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn go(len: usize, top: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        let start = current.last().copied().unwrap_or(0);
        for v in start..=top {
            current.push(v);
            go(len, top, current, out);
            current.pop();
        }
    }
    go(len, top, &mut current, &mut out);
    out
}

/// Lists every violated simplicial identity with its witness cell.
pub fn validate_simplicial(x: &TruncatedSimplicialSet) -> ValidationReport {
    let mut report = ValidationReport::new();
    let top = x.max_level;
    // d_i d_j = d_{j-1} d_i for i < j
    for k in 2..=top {
        for j in 1..=k {
            for i in 0..j {
                for c in 0..x.size(k) {
                    let lhs = x.face(k - 1, i, x.face(k, j, c));
                    let rhs = x.face(k - 1, j - 1, x.face(k, i, c));
                    if lhs != rhs {
                        report.push(
                            format!("d{i}d{j} = d{}d{i}", j - 1),
                            format!("level {k} cell {c}: {lhs} != {rhs}"),
                        );
                    }
                }
            }
        }
    }
    // d_i s_j
    for k in 0..top {
        for j in 0..=k {
            for i in 0..=k + 1 {
                for c in 0..x.size(k) {
                    let lhs = x.face(k + 1, i, x.degen(k, j, c));
                    let (rhs, rule) = if i == j || i == j + 1 {
                        (c, format!("d{i}s{j} = id"))
                    } else if i < j {
                        (
                            x.degen(k - 1, j - 1, x.face(k, i, c)),
                            format!("d{i}s{j} = s{}d{i}", j - 1),
                        )
                    } else {
                        (
                            x.degen(k - 1, j, x.face(k, i - 1, c)),
                            format!("d{i}s{j} = s{j}d{}", i - 1),
                        )
                    };
                    if lhs != rhs {
                        report.push(rule, format!("level {k} cell {c}: {lhs} != {rhs}"));
                    }
                }
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i <= j
    for k in 0..top.saturating_sub(1) {
        for j in 0..=k {
            for i in 0..=j {
                for c in 0..x.size(k) {
                    let lhs = x.degen(k + 1, i, x.degen(k, j, c));
                    let rhs = x.degen(k + 1, j + 1, x.degen(k, i, c));
                    if lhs != rhs {
                        report.push(
                            format!("s{i}s{j} = s{}s{i}", j + 1),
                            format!("level {k} cell {c}: {lhs} != {rhs}"),
                        );
                    }
                }
            }
        }
    }
    report
}

/// Upper décalage: level n becomes level n+1 of `x`, with the top face and
/// top degeneracy dropped.
pub fn decalage_top(x: &TruncatedSimplicialSet) -> Result<TruncatedSimplicialSet> {
    if x.max_level == 0 {
        return Err(Error::DecaleLevelZero);
    }
    let n = x.max_level - 1;
    let cells = x.cells[1..].to_vec();
    let mut face = vec![Vec::new()];
    for k in 1..=n {
        face.push(x.face[k + 1][..=k].to_vec());
    }
    let degen = (0..n).map(|k| x.degen[k + 1][..=k].to_vec()).collect();
    TruncatedSimplicialSet::new(n, cells, face, degen)
}

/// The face tuple `(d_0 s_j y, ..., d_{n+1} s_j y)` of a degenerate
/// (n+1)-cell, computed from level-n data via the simplicial identities.
pub(crate) fn degenerate_faces(
    x: &TruncatedSimplicialSet,
    n: usize,
    j: usize,
    y: usize,
) -> Vec<usize> {
    (0..=n + 1)
        .map(|i| {
            if i == j || i == j + 1 {
                y
            } else if i < j {
                x.degen(n - 1, j - 1, x.face(n, i, y))
            } else {
                x.degen(n - 1, j, x.face(n, i - 1, y))
            }
        })
        .collect()
}

/// All (n+2)-tuples of n-cells whose faces match as the boundary of an
/// (n+1)-simplex, in lexicographic order.
pub(crate) fn compatible_boundaries(x: &TruncatedSimplicialSet, n: usize) -> Vec<Vec<usize>> {
    let mut by_d0: HashMap<usize, Vec<usize>> = HashMap::new();
    for c in 0..x.size(n) {
        by_d0.entry(x.face(n, 0, c)).or_default().push(c);
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(n + 2);
    fn go(
        x: &TruncatedSimplicialSet,
        n: usize,
        by_d0: &HashMap<usize, Vec<usize>>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let j = current.len();
        if j == n + 2 {
            out.push(current.clone());
            return;
        }
        let candidates: Vec<usize> = if j == 0 {
            (0..x.size(n)).collect()
        } else {
            let want = x.face(n, j - 1, current[0]);
            by_d0.get(&want).cloned().unwrap_or_default()
        };
        for c in candidates {
            let ok = (0..j).all(|i| x.face(n, i, c) == x.face(n, j - 1, current[i]));
            if ok {
                current.push(c);
                go(x, n, by_d0, current, out);
                current.pop();
            }
        }
    }
    go(x, n, &by_d0, &mut current, &mut out);
    out
}

/// Adds level n+1 as the set of all boundary-compatible (n+2)-tuples of
/// n-cells.
pub fn coskeleton_extend(x: &TruncatedSimplicialSet, n: usize) -> Result<TruncatedSimplicialSet> {
    if x.max_level != n || !(2..=3).contains(&n) {
        return Err(Error::Precondition(format!(
            "coskeleton_extend needs n in {{2,3}} equal to max_level, got n={n}, max_level={}",
            x.max_level
        )));
    }
    let shells = compatible_boundaries(x, n);
    let index: HashMap<&[usize], usize> = shells
        .iter()
        .enumerate()
        .map(|(c, s)| (s.as_slice(), c))
        .collect();
    let mut face = x.face.clone();
    face.push(
        (0..=n + 1)
            .map(|i| shells.iter().map(|s| s[i]).collect())
            .collect(),
    );
    let mut degen = x.degen.clone();
    let mut top = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut map = Vec::with_capacity(x.size(n));
        for y in 0..x.size(n) {
            let faces = degenerate_faces(x, n, j, y);
            let c = index.get(faces.as_slice()).ok_or_else(|| {
                Error::Precondition(format!(
                    "degenerate shell s{j}({y}) at level {n} is not compatible; input is not simplicial"
                ))
            })?;
            map.push(*c);
        }
        top.push(map);
    }
    degen.push(top);
    let mut cells = x.cells.clone();
    cells.push(shells.len());
    TruncatedSimplicialSet::new(n + 1, cells, face, degen)
}

/// A levelwise map of truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSetMap {
    pub source: TruncatedSimplicialSet,
    pub target: TruncatedSimplicialSet,
    pub level_map: Vec<Vec<usize>>,
}

impl SSetMap {
    pub fn new(
        source: TruncatedSimplicialSet,
        target: TruncatedSimplicialSet,
        level_map: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if source.max_level != target.max_level || level_map.len() != source.max_level + 1 {
            return Err(Error::malformed("level count mismatch in simplicial map"));
        }
        for (k, map) in level_map.iter().enumerate() {
            check_map(map, source.size(k), target.size(k), &format!("level_map[{k}]"))?;
        }
        Ok(Self {
            source,
            target,
            level_map,
        })
    }

    pub fn identity(x: &TruncatedSimplicialSet) -> Self {
        let level_map = (0..=x.max_level).map(|k| (0..x.size(k)).collect()).collect();
        Self {
            source: x.clone(),
            target: x.clone(),
            level_map,
        }
    }

    pub fn apply(&self, level: usize, x: usize) -> usize {
        self.level_map[level][x]
    }

    /// Every face or degeneracy square that fails to commute.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let (s, t) = (&self.source, &self.target);
        for k in 1..=s.max_level {
            for i in 0..=k {
                for c in 0..s.size(k) {
                    let lhs = self.apply(k - 1, s.face(k, i, c));
                    let rhs = t.face(k, i, self.apply(k, c));
                    if lhs != rhs {
                        report.push(
                            format!("face d{i} at level {k}"),
                            format!("cell {c}: f(d c) = {lhs}, d f(c) = {rhs}"),
                        );
                    }
                }
            }
        }
        for k in 0..s.max_level {
            for j in 0..=k {
                for c in 0..s.size(k) {
                    let lhs = self.apply(k + 1, s.degen(k, j, c));
                    let rhs = t.degen(k, j, self.apply(k, c));
                    if lhs != rhs {
                        report.push(
                            format!("degeneracy s{j} at level {k}"),
                            format!("cell {c}: f(s c) = {lhs}, s f(c) = {rhs}"),
                        );
                    }
                }
            }
        }
        report
    }

    pub fn is_bijective(&self) -> bool {
        self.level_map.iter().enumerate().all(|(k, map)| {
            if map.len() != self.target.size(k) {
                return false;
            }
            let mut seen = vec![false; map.len()];
            map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    pub fn compose(&self, after: &SSetMap) -> Result<SSetMap> {
        if self.target != after.source {
            return Err(Error::MismatchedTargets(
                "composite of simplicial maps with mismatched ends".into(),
            ));
        }
        let level_map = self
            .level_map
            .iter()
            .enumerate()
            .map(|(k, m)| m.iter().map(|&x| after.apply(k, x)).collect())
            .collect();
        SSetMap::new(self.source.clone(), after.target.clone(), level_map)
    }
}

/// A simplicial map certified to commute with all structure maps and to be
/// bijective at every level.
#[derive(Clone, Debug)]
pub struct SSetIso {
    map: SSetMap,
}

impl SSetIso {
    pub fn certify(map: SSetMap) -> Result<Self> {
        let report = map.validate();
        if !report.is_valid() {
            return Err(Error::internal(format!("map is not simplicial: {report}")));
        }
        if !map.is_bijective() {
            return Err(Error::internal("map is not levelwise bijective"));
        }
        Ok(Self { map })
    }

    pub fn map(&self) -> &SSetMap {
        &self.map
    }

    pub fn inverse(&self) -> SSetMap {
        let level_map = self
            .map
            .level_map
            .iter()
            .map(|m| {
                let mut inv = vec![0; m.len()];
                for (x, &y) in m.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        SSetMap {
            source: self.map.target.clone(),
            target: self.map.source.clone(),
            level_map,
        }
    }
}

/// Levelwise fiber product with its two projections.
pub fn pullback_ssets(
    f: &SSetMap,
    g: &SSetMap,
) -> Result<(TruncatedSimplicialSet, SSetMap, SSetMap)> {
    if f.target != g.target {
        return Err(Error::MismatchedTargets(
            "pullback needs both maps to share a target".into(),
        ));
    }
    let top = f.target.max_level;
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(top + 1);
    let mut lookup: Vec<HashMap<(usize, usize), usize>> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
        for b in 0..g.source.size(k) {
            by_image.entry(g.apply(k, b)).or_default().push(b);
        }
        let level: Vec<(usize, usize)> = (0..f.source.size(k))
            .flat_map(|a| {
                by_image
                    .get(&f.apply(k, a))
                    .into_iter()
                    .flatten()
                    .map(move |&b| (a, b))
            })
            .collect();
        lookup.push(level.iter().enumerate().map(|(n, &p)| (p, n)).collect());
        pairs.push(level);
    }
    let (fs, gs) = (&f.source, &g.source);
    let mut face = vec![Vec::new()];
    for k in 1..=top {
        face.push(
            (0..=k)
                .map(|i| {
                    pairs[k]
                        .iter()
                        .map(|&(a, b)| lookup[k - 1][&(fs.face(k, i, a), gs.face(k, i, b))])
                        .collect()
                })
                .collect(),
        );
    }
    let degen = (0..top)
        .map(|k| {
            (0..=k)
                .map(|j| {
                    pairs[k]
                        .iter()
                        .map(|&(a, b)| lookup[k + 1][&(fs.degen(k, j, a), gs.degen(k, j, b))])
                        .collect()
                })
                .collect()
        })
        .collect();
    let cells = pairs.iter().map(Vec::len).collect();
    let apex = TruncatedSimplicialSet::new(top, cells, face, degen)?;
    let left = pairs.iter().map(|l| l.iter().map(|p| p.0).collect()).collect();
    let right = pairs.iter().map(|l| l.iter().map(|p| p.1).collect()).collect();
    let pf = SSetMap::new(apex.clone(), fs.clone(), left)?;
    let pg = SSetMap::new(apex.clone(), gs.clone(), right)?;
    Ok((apex, pf, pg))
}

/// A (3,2)-horn: every face of a would-be 3-simplex except `d2`, as 2-cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Horn32 {
    face0: usize,
    face1: usize,
    face3: usize,
}

impl Horn32 {
    pub fn new(x: &TruncatedSimplicialSet, face0: usize, face1: usize, face3: usize) -> Result<Self> {
        if x.max_level < 2 || [face0, face1, face3].iter().any(|&c| c >= x.size(2)) {
            return Err(Error::NotAHorn("faces must be 2-cells".into()));
        }
        let horn = Self {
            face0,
            face1,
            face3,
        };
        if !horn.compatible_in(x) {
            return Err(Error::NotAHorn(format!(
                "({face0}, {face1}, {face3}) do not share edges"
            )));
        }
        Ok(horn)
    }

    pub fn faces(&self) -> (usize, usize, usize) {
        (self.face0, self.face1, self.face3)
    }

    fn compatible_in(&self, x: &TruncatedSimplicialSet) -> bool {
        let d = |i, c| x.face(2, i, c);
        d(0, self.face1) == d(0, self.face0)
            && d(0, self.face3) == d(2, self.face0)
            && d(1, self.face3) == d(2, self.face1)
    }
}

pub fn enumerate_horns32(x: &TruncatedSimplicialSet) -> Result<Vec<Horn32>> {
    if x.max_level < 3 {
        return Err(Error::Precondition("horns need level 3".into()));
    }
    let mut by_d0: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut by_d0_d1: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for c in 0..x.size(2) {
        by_d0.entry(x.face(2, 0, c)).or_default().push(c);
        by_d0_d1
            .entry((x.face(2, 0, c), x.face(2, 1, c)))
            .or_default()
            .push(c);
    }
    let mut out = Vec::new();
    for f0 in 0..x.size(2) {
        for &f1 in by_d0.get(&x.face(2, 0, f0)).into_iter().flatten() {
            let key = (x.face(2, 2, f0), x.face(2, 2, f1));
            for &f3 in by_d0_d1.get(&key).into_iter().flatten() {
                out.push(Horn32 {
                    face0: f0,
                    face1: f1,
                    face3: f3,
                });
            }
        }
    }
    Ok(out)
}

pub fn fillers(x: &TruncatedSimplicialSet, horn: &Horn32) -> Result<Vec<usize>> {
    if x.max_level < 3 {
        return Err(Error::Precondition("horns need level 3".into()));
    }
    if [horn.face0, horn.face1, horn.face3].iter().any(|&c| c >= x.size(2)) || !horn.compatible_in(x) {
        return Err(Error::NotAHorn(format!("{horn:?}")));
    }
    Ok((0..x.size(3))
        .filter(|&s| {
            x.face(3, 0, s) == horn.face0 && x.face(3, 1, s) == horn.face1 && x.face(3, 3, s) == horn.face3
        })
        .collect())
}

/// All simplicial maps `source -> target`, by backtracking cell by cell.
///
/// A cell's image must have the images of its faces as faces, and a
/// degenerate cell `s_j z` must go to `s_j f(z)`.
pub fn enumerate_maps(
    source: &TruncatedSimplicialSet,
    target: &TruncatedSimplicialSet,
) -> Result<Vec<SSetMap>> {
    if source.max_level != target.max_level {
        return Err(Error::Precondition("maps need equal truncation levels".into()));
    }
    let top = source.max_level;
    let indices: Vec<HashMap<Vec<usize>, Vec<usize>>> =
        (0..=top).map(|k| if k == 0 { HashMap::new() } else { target.face_index(k) }).collect();
    // forced[k][c] = list of (j, z) with s_j z = c
    let mut forced: Vec<Vec<Vec<(usize, usize)>>> =
        (0..=top).map(|k| vec![Vec::new(); source.size(k)]).collect();
    for k in 0..top {
        for j in 0..=k {
            for z in 0..source.size(k) {
                forced[k + 1][source.degen(k, j, z)].push((j, z));
            }
        }
    }
    let order: Vec<(usize, usize)> = (0..=top)
        .flat_map(|k| (0..source.size(k)).map(move |c| (k, c)))
        .collect();
    let mut level_map: Vec<Vec<usize>> = (0..=top).map(|k| vec![usize::MAX; source.size(k)]).collect();
    let mut out = Vec::new();

    struct Ctx<'a> {
        source: &'a TruncatedSimplicialSet,
        target: &'a TruncatedSimplicialSet,
        indices: &'a [HashMap<Vec<usize>, Vec<usize>>],
        forced: &'a [Vec<Vec<(usize, usize)>>],
        order: &'a [(usize, usize)],
    }

    fn go(ctx: &Ctx<'_>, pos: usize, level_map: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if pos == ctx.order.len() {
            out.push(level_map.clone());
            return;
        }
        let (k, c) = ctx.order[pos];
        let candidates: Vec<usize> = if let Some(&(j, z)) = ctx.forced[k][c].first() {
            vec![ctx.target.degen(k - 1, j, level_map[k - 1][z])]
        } else if k == 0 {
            (0..ctx.target.size(0)).collect()
        } else {
            let want: Vec<usize> = (0..=k)
                .map(|i| level_map[k - 1][ctx.source.face(k, i, c)])
                .collect();
            ctx.indices[k].get(&want).cloned().unwrap_or_default()
        };
        for y in candidates {
            if k > 0 && (0..=k).any(|i| ctx.target.face(k, i, y) != level_map[k - 1][ctx.source.face(k, i, c)]) {
                continue;
            }
            if ctx.forced[k][c]
                .iter()
                .any(|&(j, z)| ctx.target.degen(k - 1, j, level_map[k - 1][z]) != y)
            {
                continue;
            }
            level_map[k][c] = y;
            go(ctx, pos + 1, level_map, out);
        }
        level_map[k][c] = usize::MAX;
    }

    let ctx = Ctx {
        source,
        target,
        indices: &indices,
        forced: &forced,
        order: &order,
    };
    let mut raw = Vec::new();
    go(&ctx, 0, &mut level_map, &mut raw);
    for lm in raw {
        out.push(SSetMap {
            source: source.clone(),
            target: target.clone(),
            level_map: lm,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(max_level: usize) -> TruncatedSimplicialSet {
        TruncatedSimplicialSet::standard_simplex(0, max_level).unwrap()
    }

    #[test]
    fn standard_simplex_point_is_valid() {
        let x = point(4);
        assert_eq!(x.sizes(), vec![1; 5]);
        assert!(validate_simplicial(&x).is_valid());
    }

    #[test]
    fn standard_simplices_are_valid() {
        for k in 0..=3 {
            let x = TruncatedSimplicialSet::standard_simplex(k, 3).unwrap();
            assert!(validate_simplicial(&x).is_valid(), "Δ^{k}");
        }
        // Δ^2 at level 1: sequences (i<=j) in 0..=2
        let x = TruncatedSimplicialSet::standard_simplex(2, 3).unwrap();
        assert_eq!(x.sizes(), vec![3, 6, 10, 15]);
    }

    #[test]
    fn redirected_face_is_reported() {
        let x = TruncatedSimplicialSet::standard_simplex(1, 2).unwrap();
        let mut face = x.face.clone();
        // cell 1 at level 2 is (0,0,1); d0 should be (0,1)
        let wrong = face[2][0][1];
        face[2][0][1] = if wrong == 0 { 2 } else { 0 };
        let y = TruncatedSimplicialSet::new(2, x.cells.clone(), face, x.degen.clone()).unwrap();
        let report = validate_simplicial(&y);
        assert!(!report.is_valid());
        assert!(report.mentions("d0d2 = d1d0") || report.mentions("d0d1 = d0d0"));
    }

    #[test]
    fn decalage_of_point_is_point() {
        let d = decalage_top(&point(4)).unwrap();
        assert_eq!(d.sizes(), vec![1; 4]);
        assert!(matches!(decalage_top(&point(0)), Err(Error::DecaleLevelZero)));
    }

    #[test]
    fn coskeleton_of_point() {
        let x = coskeleton_extend(&point(3), 3).unwrap();
        assert_eq!(x.size(4), 1);
        assert!(validate_simplicial(&x).is_valid());
        assert!(coskeleton_extend(&point(1), 1).is_err());
    }

    #[test]
    fn coskeleton_of_simplex_reproduces_simplex() {
        // Δ^2 is 1-coskeletal, so extending its 2-truncation must recover level 3.
        let full = TruncatedSimplicialSet::standard_simplex(2, 3).unwrap();
        let ext = coskeleton_extend(&full.truncate(2).unwrap(), 2).unwrap();
        assert_eq!(ext.size(3), full.size(3));
        assert!(validate_simplicial(&ext).is_valid());
    }

    #[test]
    fn horns_in_point() {
        let x = point(3);
        let horns = enumerate_horns32(&x).unwrap();
        assert_eq!(horns.len(), 1);
        assert_eq!(fillers(&x, &horns[0]).unwrap(), vec![0]);
    }

    #[test]
    fn incompatible_triple_is_not_a_horn() {
        let x = TruncatedSimplicialSet::standard_simplex(1, 3).unwrap();
        // (0,0,0) and (1,1,1) have no common edges
        assert!(matches!(Horn32::new(&x, 0, 3, 0), Err(Error::NotAHorn(_))));
    }

    #[test]
    fn pullback_along_identity() {
        let x = TruncatedSimplicialSet::standard_simplex(1, 2).unwrap();
        let id = SSetMap::identity(&x);
        let (apex, p1, p2) = pullback_ssets(&id, &id).unwrap();
        assert_eq!(apex.sizes(), x.sizes());
        assert!(p1.validate().is_valid() && p2.validate().is_valid());
    }

    #[test]
    fn pullback_mismatch_errors() {
        let x = point(2);
        let y = TruncatedSimplicialSet::standard_simplex(1, 2).unwrap();
        let r = pullback_ssets(&SSetMap::identity(&x), &SSetMap::identity(&y));
        assert!(matches!(r, Err(Error::MismatchedTargets(_))));
    }

    #[test]
    fn maps_between_simplices_count_monotone_maps() {
        // simplicial maps Δ^1 -> Δ^2 are monotone maps [1] -> [2]: 6 of them
        let a = TruncatedSimplicialSet::standard_simplex(1, 3).unwrap();
        let b = TruncatedSimplicialSet::standard_simplex(2, 3).unwrap();
        let maps = enumerate_maps(&a, &b).unwrap();
        assert_eq!(maps.len(), 6);
        assert!(maps.iter().all(|m| m.validate().is_valid()));
    }
}
