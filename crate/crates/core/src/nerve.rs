//! The Duskin nerve of a finite 2-category, truncated at level 3, and its
//! comparison with the décalage.

use std::collections::HashMap;

use crate::simplicial::{
    coskeleton_extend, decalage_top, degenerate_faces, SSetIso, SSetMap, TruncatedSimplicialSet,
};
use crate::twocat::{lax_slice_sum, validate_2category, Finite2Category, Functor2, LaxSlice};
use crate::{Error, Result};

/// `alpha : g ∘ f ⇒ h`, with `f : x0 → x1`, `g : x1 → x2`, `h : x0 → x2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaxTriangle {
    pub f: usize,
    pub g: usize,
    pub h: usize,
    pub alpha: usize,
}

impl LaxTriangle {
    /// Faces in simplicial order: `d0 = g`, `d1 = h`, `d2 = f`.
    pub fn edges(&self) -> [usize; 3] {
        [self.g, self.h, self.f]
    }
}

/// Four lax triangles, indexed as level-2 cells of the nerve, in face order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThreeSimplex {
    pub alpha123: usize,
    pub alpha023: usize,
    pub alpha013: usize,
    pub alpha012: usize,
}

impl ThreeSimplex {
    pub fn faces(&self) -> [usize; 4] {
        [self.alpha123, self.alpha023, self.alpha013, self.alpha012]
    }
}

/// The nerve with labelled cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nerve {
    pub sset: TruncatedSimplicialSet,
    pub triangles: Vec<LaxTriangle>,
    pub simplices: Vec<ThreeSimplex>,
    triangle_index: HashMap<(usize, usize, usize), usize>,
    simplex_index: HashMap<[usize; 4], usize>,
}

impl Nerve {
    /// Level-2 cell for `alpha : g ∘ f ⇒ _`.
    pub fn triangle(&self, f: usize, g: usize, alpha: usize) -> Option<usize> {
        self.triangle_index.get(&(f, g, alpha)).copied()
    }

    pub fn simplex(&self, faces: [usize; 4]) -> Option<usize> {
        self.simplex_index.get(&faces).copied()
    }
}

/// Whether four lax triangles bound a 3-simplex: shared edges match and
/// `α013 ∘ (α123 □ 1_f01) = α023 ∘ (1_f23 □ α012)`.
pub fn pastes(c: &Finite2Category, t: [LaxTriangle; 4]) -> bool {
    let [a123, a023, a013, a012] = t;
    let edges_match = a123.f == a012.g
        && a013.f == a012.f
        && a013.g == a123.h
        && a023.f == a012.h
        && a023.g == a123.g
        && a023.h == a013.h;
    edges_match
        && c.vert(a013.alpha, c.whisker_right(a123.alpha, a012.f))
            == c.vert(a023.alpha, c.whisker_left(a123.g, a012.alpha))
}

pub fn duskin_nerve_labelled(c: &Finite2Category) -> Result<Nerve> {
    validate_2category(c).into_result("2-category")?;
    let (n, m, _) = c.sizes();
    let from = c.two_cells_from();
    let mut triangles = Vec::new();
    for f in 0..m {
        for g in (0..m).filter(|&g| c.src1(g) == c.tgt1(f)) {
            for &alpha in from.get(&c.comp(g, f)).into_iter().flatten() {
                triangles.push(LaxTriangle {
                    f,
                    g,
                    h: c.tgt2(alpha),
                    alpha,
                });
            }
        }
    }
    triangles.sort();
    let triangle_index: HashMap<(usize, usize, usize), usize> = triangles
        .iter()
        .enumerate()
        .map(|(i, t)| ((t.f, t.g, t.alpha), i))
        .collect();

    let mut by_fg: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut by_f: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, t) in triangles.iter().enumerate() {
        by_fg.entry((t.f, t.g)).or_default().push(i);
        by_f.entry(t.f).or_default().push(i);
    }
    let mut simplices = Vec::new();
    for (i012, t012) in triangles.iter().enumerate() {
        for &i123 in by_f.get(&t012.g).into_iter().flatten() {
            let t123 = triangles[i123];
            for &i013 in by_fg.get(&(t012.f, t123.h)).into_iter().flatten() {
                let t013 = triangles[i013];
                for &i023 in by_fg.get(&(t012.h, t123.g)).into_iter().flatten() {
                    let t023 = triangles[i023];
                    if pastes(c, [t123, t023, t013, *t012]) {
                        simplices.push(ThreeSimplex {
                            alpha123: i123,
                            alpha023: i023,
                            alpha013: i013,
                            alpha012: i012,
                        });
                    }
                }
            }
        }
    }
    simplices.sort();
    let simplex_index: HashMap<[usize; 4], usize> = simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (s.faces(), i))
        .collect();

    let level1 = vec![
        c.one_cells.iter().map(|&(_, t)| t).collect(),
        c.one_cells.iter().map(|&(s, _)| s).collect(),
    ];
    let level2 = (0..3)
        .map(|i| triangles.iter().map(|t| t.edges()[i]).collect())
        .collect();
    let level3 = (0..4)
        .map(|i| simplices.iter().map(|s| s.faces()[i]).collect())
        .collect();
    let face = vec![Vec::new(), level1, level2, level3];

    let s0_obj: Vec<usize> = (0..n).map(|x| c.id1(x)).collect();
    let tri = |f: usize, g: usize, alpha: usize| -> Result<usize> {
        triangle_index
            .get(&(f, g, alpha))
            .copied()
            .ok_or_else(|| Error::internal("degenerate triangle missing"))
    };
    let s0_edge = (0..m)
        .map(|f| tri(c.id1(c.src1(f)), f, c.id2(f)))
        .collect::<Result<Vec<_>>>()?;
    let s1_edge = (0..m)
        .map(|f| tri(f, c.id1(c.tgt1(f)), c.id2(f)))
        .collect::<Result<Vec<_>>>()?;
    let partial = TruncatedSimplicialSet::new(
        2,
        vec![n, m, triangles.len()],
        face[..3].to_vec(),
        vec![vec![s0_obj.clone()], vec![s0_edge.clone(), s1_edge.clone()]],
    )?;
    let mut top = Vec::with_capacity(3);
    for j in 0..3 {
        let map = (0..triangles.len())
            .map(|t| {
                let faces = degenerate_faces(&partial, 2, j, t);
                simplex_index
                    .get(faces.as_slice())
                    .copied()
                    .ok_or_else(|| Error::internal(format!("degenerate 3-simplex s{j}({t}) missing")))
            })
            .collect::<Result<Vec<_>>>()?;
        top.push(map);
    }
    let sset = TruncatedSimplicialSet::new(
        3,
        vec![n, m, triangles.len(), simplices.len()],
        face,
        vec![vec![s0_obj], vec![s0_edge, s1_edge], top],
    )?;
    Ok(Nerve {
        sset,
        triangles,
        simplices,
        triangle_index,
        simplex_index,
    })
}

/// Levels 0..3 of the Duskin nerve.
pub fn duskin_nerve(c: &Finite2Category) -> Result<TruncatedSimplicialSet> {
    Ok(duskin_nerve_labelled(c)?.sset)
}

/// The simplicial map induced by a strict 2-functor.
pub fn nerve_map(f: &Functor2, c: &Nerve, d: &Nerve) -> Result<SSetMap> {
    let on_tri = c
        .triangles
        .iter()
        .map(|t| {
            d.triangle(f.on_one_cells[t.f], f.on_one_cells[t.g], f.on_two_cells[t.alpha])
                .ok_or_else(|| Error::internal("image triangle missing"))
        })
        .collect::<Result<Vec<_>>>()?;
    let on_simplex = c
        .simplices
        .iter()
        .map(|s| {
            d.simplex(s.faces().map(|t| on_tri[t]))
                .ok_or_else(|| Error::internal("image 3-simplex missing"))
        })
        .collect::<Result<Vec<_>>>()?;
    SSetMap::new(
        c.sset.clone(),
        d.sset.clone(),
        vec![f.on_objects.clone(), f.on_one_cells.clone(), on_tri, on_simplex],
    )
}

/// Extends a map of 3-truncated sets along their level-4 coskeleta.
pub fn extend_map_to_level4(
    f: &SSetMap,
    source4: &TruncatedSimplicialSet,
    target4: &TruncatedSimplicialSet,
) -> Result<SSetMap> {
    let index = target4.face_index(4);
    let top = (0..source4.size(4))
        .map(|x| {
            let image: Vec<usize> = source4.faces_of(4, x).iter().map(|&s| f.apply(3, s)).collect();
            index
                .get(&image)
                .and_then(|v| v.first().copied())
                .ok_or_else(|| Error::internal("image 4-cell missing"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut level_map = f.level_map.clone();
    level_map.push(top);
    SSetMap::new(source4.clone(), target4.clone(), level_map)
}

/// Drops level 0 of a map and reindexes, matching [`decalage_top`].
pub fn decalage_map(f: &SSetMap) -> Result<SSetMap> {
    SSetMap::new(
        decalage_top(&f.source)?,
        decalage_top(&f.target)?,
        f.level_map[1..].to_vec(),
    )
}

/// The comparison data for one 2-category.
pub struct DecNerveIso {
    pub nerve: Nerve,
    pub slice: LaxSlice,
    pub slice_nerve: Nerve,
    pub iso: SSetIso,
}

/// The explicit bijection from the décalage of the nerve of `c` to the nerve
/// of its lax slice sum, certified levelwise.
pub fn dec_nerve_iso(c: &Finite2Category) -> Result<DecNerveIso> {
    let nerve = duskin_nerve_labelled(c)?;
    let slice = lax_slice_sum(c)?;
    let slice_nerve = duskin_nerve_labelled(&slice.category)?;
    let dec = decalage_top(&coskeleton_extend(&nerve.sset, 3)?)?;

    // an edge of the décalage is a lax triangle, read as a slice arrow
    // from its long edge to its last edge
    let level1 = nerve
        .triangles
        .iter()
        .map(|t| {
            slice
                .arrow_index
                .get(&crate::twocat::SliceArrow {
                    h: t.h,
                    g: t.g,
                    f: t.f,
                    alpha: t.alpha,
                })
                .copied()
                .ok_or_else(|| Error::internal("slice arrow for triangle missing"))
        })
        .collect::<Result<Vec<_>>>()?;
    let dc = &slice.category;
    let level2 = nerve
        .simplices
        .iter()
        .map(|s| {
            let f01 = level1[s.alpha013];
            let f12 = level1[s.alpha123];
            let f02 = level1[s.alpha023];
            let gamma = nerve.triangles[s.alpha012].alpha;
            let comp = dc.comp(f12, f01);
            let cell = slice
                .two_cell_index
                .get(&(comp, f02, gamma))
                .copied()
                .ok_or_else(|| Error::internal("slice 2-cell for 3-simplex missing"))?;
            slice_nerve
                .triangle(f01, f12, cell)
                .ok_or_else(|| Error::internal("slice triangle missing"))
        })
        .collect::<Result<Vec<_>>>()?;
    let level3 = (0..dec.size(3))
        .map(|x| {
            let faces = [0, 1, 2, 3].map(|i| level2[dec.face(3, i, x)]);
            slice_nerve
                .simplex(faces)
                .ok_or_else(|| Error::internal("slice 3-simplex missing"))
        })
        .collect::<Result<Vec<_>>>()?;
    let level0: Vec<usize> = (0..dec.size(0)).collect();
    let map = SSetMap::new(
        dec,
        slice_nerve.sset.clone(),
        vec![level0, level1, level2, level3],
    )?;
    let iso = SSetIso::certify(map)?;
    Ok(DecNerveIso {
        nerve,
        slice,
        slice_nerve,
        iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::validate_simplicial;
    use crate::twocat::{deloop, StrictMonCat};

    #[test]
    fn nerve_of_terminal() {
        let x = duskin_nerve(&Finite2Category::terminal()).unwrap();
        assert_eq!(x.sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn nerve_of_cyclic_group() {
        let c = deloop(&StrictMonCat::cyclic(2)).unwrap();
        let x = duskin_nerve(&c).unwrap();
        assert_eq!(x.sizes(), vec![1, 2, 4, 8]);
        assert!(validate_simplicial(&x).is_valid());
    }

    #[test]
    fn iso_for_cyclic_group() {
        let c = deloop(&StrictMonCat::cyclic(2)).unwrap();
        let iso = dec_nerve_iso(&c).unwrap();
        assert_eq!(iso.iso.map().source.sizes(), vec![2, 4, 8, 16]);
        assert_eq!(iso.slice_nerve.sset.sizes(), vec![2, 4, 8, 16]);
    }
}
