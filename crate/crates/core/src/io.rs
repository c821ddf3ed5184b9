//! JSON envelopes `{"kind", "version", "body"}` for every artifact type.
//!
//! Bodies list cells by ascending index, and composition tables are triples
//! sorted by key, so saving is deterministic.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::category::{validate_category, FiniteCategory};
use crate::fibration::{check_split_fibration, SplitFibration};
use crate::freemon::{validate_presentation, MonPresentation};
use crate::operad::{validate_operad, Bifunctor, CategoricalOperad};
use crate::operadic::{validate_operadic, validate_operadic_functor, OperadicFunctor, StructureMaps, UnaryOperadic2Cat};
use crate::report::ValidationReport;
use crate::simplicial::{validate_simplicial, TruncatedSimplicialSet};
use crate::fixtures;
use crate::twocat::{validate_2category, validate_moncat, Finite2Category, StrictMonCat};
use crate::{Error, Result};

pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    SimplicialSet,
    Category,
    TwoCategory,
    MonoidalCategory,
    Operadic,
    Operad,
    OperadicFunctor,
    Fibration,
    Presentation,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::SimplicialSet => "simplicial_set",
            Kind::Category => "category",
            Kind::TwoCategory => "two_category",
            Kind::MonoidalCategory => "monoidal_category",
            Kind::Operadic => "operadic",
            Kind::Operad => "operad",
            Kind::OperadicFunctor => "operadic_functor",
            Kind::Fibration => "fibration",
            Kind::Presentation => "presentation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub kind: Kind,
    pub version: u32,
    pub body: Value,
}

/// A type with a JSON body form.
pub trait Artifact: Sized {
    const KIND: Kind;
    type Body: Serialize + DeserializeOwned + JsonSchema;
    fn to_body(&self) -> Self::Body;
    /// Shape checks only; the mathematical validator runs separately.
    fn from_body(body: Self::Body) -> Result<Self>;
    fn validate(&self) -> ValidationReport;
}

/// JSON schema of the envelope for `T`, with the body schema inlined.
pub fn schema<T: Artifact>() -> Result<String> {
    let mut body = serde_json::to_value(schemars::schema_for!(T::Body))?;
    let definitions = body.as_object_mut().and_then(|o| o.remove("definitions"));
    if let Some(o) = body.as_object_mut() {
        o.remove("$schema");
    }
    let mut root = serde_json::json!({
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": T::KIND.name(),
        "type": "object",
        "additionalProperties": false,
        "required": ["kind", "version", "body"],
        "properties": {
            "kind": { "const": T::KIND.name() },
            "version": { "const": VERSION },
            "body": body,
        },
    });
    if let Some(d) = definitions {
        root["definitions"] = d;
    }
    Ok(serde_json::to_string_pretty(&root)? + "\n")
}

/// Schemas for every kind, keyed by kind name.
pub fn all_schemas() -> Result<Vec<(&'static str, String)>> {
    Ok(vec![
        (Kind::SimplicialSet.name(), schema::<TruncatedSimplicialSet>()?),
        (Kind::Category.name(), schema::<FiniteCategory>()?),
        (Kind::TwoCategory.name(), schema::<Finite2Category>()?),
        (Kind::MonoidalCategory.name(), schema::<StrictMonCat>()?),
        (Kind::Operadic.name(), schema::<UnaryOperadic2Cat>()?),
        (Kind::Operad.name(), schema::<CategoricalOperad>()?),
        (Kind::OperadicFunctor.name(), schema::<OperadicFunctor>()?),
        (Kind::Fibration.name(), schema::<SplitFibration>()?),
        (Kind::Presentation.name(), schema::<MonPresentation>()?),
    ])
}

/// Pretty JSON with a trailing newline.
pub fn save<T: Artifact>(x: &T) -> Result<String> {
    let env = Envelope {
        kind: T::KIND,
        version: VERSION,
        body: serde_json::to_value(x.to_body())?,
    };
    Ok(serde_json::to_string_pretty(&env)? + "\n")
}

pub fn read_envelope(text: &str) -> Result<Envelope> {
    let env: Envelope = serde_json::from_str(text)?;
    if env.version != VERSION {
        return Err(Error::malformed(format!("unsupported version {}", env.version)));
    }
    Ok(env)
}

pub fn load<T: Artifact>(text: &str) -> Result<T> {
    let env = read_envelope(text)?;
    if env.kind != T::KIND {
        return Err(Error::malformed(format!(
            "expected kind {}, found {}",
            T::KIND.name(),
            env.kind.name()
        )));
    }
    T::from_body(serde_json::from_value(env.body)?)
}

/// Parses any envelope and runs the validator for its kind.
pub fn validate_text(text: &str) -> Result<(Kind, ValidationReport)> {
    fn run<T: Artifact>(body: Value) -> Result<ValidationReport> {
        Ok(T::from_body(serde_json::from_value(body)?)?.validate())
    }
    let env = read_envelope(text)?;
    let report = match env.kind {
        Kind::SimplicialSet => run::<TruncatedSimplicialSet>(env.body),
        Kind::Category => run::<FiniteCategory>(env.body),
        Kind::TwoCategory => run::<Finite2Category>(env.body),
        Kind::MonoidalCategory => run::<StrictMonCat>(env.body),
        Kind::Operadic => run::<UnaryOperadic2Cat>(env.body),
        Kind::Operad => run::<CategoricalOperad>(env.body),
        Kind::OperadicFunctor => run::<OperadicFunctor>(env.body),
        Kind::Fibration => run::<SplitFibration>(env.body),
        Kind::Presentation => run::<MonPresentation>(env.body),
    }?;
    Ok((env.kind, report))
}

/// Extra example names, each an alias for a fixture or a simplex.
pub const EXAMPLE_ALIASES: &[(&str, &str)] = &[
    ("bouquets1", "bq1"),
    ("bouquets2", "bq2"),
    ("paraZ2", "para-z2"),
    ("walking_arrow", "arrow"),
    ("K2cat", "two-cell"),
    ("delta0", "delta0"),
    ("delta1", "delta1"),
    ("delta2", "delta2"),
    ("delta3", "delta3"),
    ("phi0-0", "phi0-0"),
    ("phi0-1", "phi0-1"),
    ("phi0-2", "phi0-2"),
    ("phi0-3", "phi0-3"),
];

/// Every name `example` accepts.
pub fn example_names() -> Vec<&'static str> {
    let lists = [fixtures::MONCATS, fixtures::TWOCATS, fixtures::OPERADIC, fixtures::OPERADS];
    let mut names: Vec<&str> = lists.iter().flat_map(|l| l.iter().copied()).collect();
    names.extend(EXAMPLE_ALIASES.iter().map(|&(a, _)| a));
    names
}

/// A named fixture as envelope text. Operads come out in canonical form, so
/// that extraction from their Grothendieck construction reproduces them.
pub fn example(name: &str) -> Result<String> {
    let target = EXAMPLE_ALIASES.iter().find(|&&(a, _)| a == name).map_or(name, |&(_, t)| t);
    if let Some(k) = target.strip_prefix("delta").and_then(|k| k.parse::<usize>().ok()) {
        return save(&TruncatedSimplicialSet::standard_simplex(k, 3)?);
    }
    if let Some(k) = target.strip_prefix("phi0-").and_then(|k| k.parse::<usize>().ok()) {
        return save(&crate::freemon::phi0(k)?);
    }
    if fixtures::MONCATS.contains(&target) {
        save(&fixtures::moncat(target)?)
    } else if fixtures::TWOCATS.contains(&target) {
        save(&fixtures::twocat(target)?)
    } else if fixtures::OPERADIC.contains(&target) {
        save(&fixtures::operadic(target)?)
    } else if fixtures::OPERADS.contains(&target) {
        save(&fixtures::operad(target)?.canonical())
    } else {
        Err(Error::UnknownFixture {
            name: name.to_string(),
            available: example_names().join(", "),
        })
    }
}

fn triples(m: &BTreeMap<(usize, usize), usize>) -> Vec<[usize; 3]> {
    m.iter().map(|(&(g, f), &h)| [g, f, h]).collect()
}

fn table(t: &[[usize; 3]]) -> BTreeMap<(usize, usize), usize> {
    t.iter().map(|&[g, f, h]| ((g, f), h)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SimplicialSetBody {
    pub max_level: usize,
    pub cells: Vec<usize>,
    pub face: Vec<Vec<Vec<usize>>>,
    pub degen: Vec<Vec<Vec<usize>>>,
}

impl Artifact for TruncatedSimplicialSet {
    const KIND: Kind = Kind::SimplicialSet;
    type Body = SimplicialSetBody;

    fn to_body(&self) -> SimplicialSetBody {
        let top = self.max_level();
        SimplicialSetBody {
            max_level: top,
            cells: self.sizes(),
            face: (0..=top)
                .map(|k| if k == 0 { vec![] } else { (0..=k).map(|i| self.face_table(k, i).to_vec()).collect() })
                .collect(),
            degen: (0..top).map(|k| (0..=k).map(|j| self.degen_table(k, j).to_vec()).collect()).collect(),
        }
    }

    fn from_body(b: SimplicialSetBody) -> Result<Self> {
        TruncatedSimplicialSet::new(b.max_level, b.cells, b.face, b.degen)
    }

    fn validate(&self) -> ValidationReport {
        validate_simplicial(self)
    }
}

/// `compose` lists `[g, f, g∘f]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct CategoryBody {
    pub objects: usize,
    pub morphisms: Vec<(usize, usize)>,
    pub compose: Vec<[usize; 3]>,
    pub ids: Vec<usize>,
}

impl Artifact for FiniteCategory {
    const KIND: Kind = Kind::Category;
    type Body = CategoryBody;

    fn to_body(&self) -> CategoryBody {
        CategoryBody {
            objects: self.objects,
            morphisms: self.morphisms.clone(),
            compose: triples(&self.compose),
            ids: self.ids.clone(),
        }
    }

    fn from_body(b: CategoryBody) -> Result<Self> {
        let c = FiniteCategory {
            objects: b.objects,
            morphisms: b.morphisms,
            compose: table(&b.compose),
            ids: b.ids,
        };
        c.check_shape()?;
        Ok(c)
    }

    fn validate(&self) -> ValidationReport {
        validate_category(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct TwoCategoryBody {
    pub objects: usize,
    pub one_cells: Vec<(usize, usize)>,
    pub two_cells: Vec<(usize, usize)>,
    pub compose1: Vec<[usize; 3]>,
    pub vcomp: Vec<[usize; 3]>,
    pub hcomp: Vec<[usize; 3]>,
    pub id1: Vec<usize>,
    pub id2: Vec<usize>,
}

impl Artifact for Finite2Category {
    const KIND: Kind = Kind::TwoCategory;
    type Body = TwoCategoryBody;

    fn to_body(&self) -> TwoCategoryBody {
        TwoCategoryBody {
            objects: self.objects,
            one_cells: self.one_cells.clone(),
            two_cells: self.two_cells.clone(),
            compose1: triples(&self.compose1),
            vcomp: triples(&self.vcomp),
            hcomp: triples(&self.hcomp),
            id1: self.id1.clone(),
            id2: self.id2.clone(),
        }
    }

    fn from_body(b: TwoCategoryBody) -> Result<Self> {
        let c = Finite2Category {
            objects: b.objects,
            one_cells: b.one_cells,
            two_cells: b.two_cells,
            compose1: table(&b.compose1),
            vcomp: table(&b.vcomp),
            hcomp: table(&b.hcomp),
            id1: b.id1,
            id2: b.id2,
        };
        c.check_shape()?;
        Ok(c)
    }

    fn validate(&self) -> ValidationReport {
        validate_2category(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct MonCatBody {
    pub category: CategoryBody,
    pub tensor_obj: Vec<Vec<usize>>,
    pub unit: usize,
    pub tensor_mor: Vec<Vec<usize>>,
}

impl Artifact for StrictMonCat {
    const KIND: Kind = Kind::MonoidalCategory;
    type Body = MonCatBody;

    fn to_body(&self) -> MonCatBody {
        MonCatBody {
            category: self.category.to_body(),
            tensor_obj: self.tensor_obj.clone(),
            unit: self.unit,
            tensor_mor: self.tensor_mor.clone(),
        }
    }

    fn from_body(b: MonCatBody) -> Result<Self> {
        let m = StrictMonCat {
            category: FiniteCategory::from_body(b.category)?,
            tensor_obj: b.tensor_obj,
            unit: b.unit,
            tensor_mor: b.tensor_mor,
        };
        m.check_shape()?;
        Ok(m)
    }

    fn validate(&self) -> ValidationReport {
        validate_moncat(self)
    }
}

/// Triangles and 3-simplices in the structure maps are indexed as in the
/// labelled Duskin nerve of `category`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct OperadicBody {
    pub category: TwoCategoryBody,
    pub maps: StructureMaps,
}

impl Artifact for UnaryOperadic2Cat {
    const KIND: Kind = Kind::Operadic;
    type Body = OperadicBody;

    fn to_body(&self) -> OperadicBody {
        OperadicBody {
            category: self.cat().to_body(),
            maps: self.maps().clone(),
        }
    }

    fn from_body(b: OperadicBody) -> Result<Self> {
        let cat = Finite2Category::from_body(b.category)?;
        let report = validate_2category(&cat);
        if !report.is_valid() {
            return Err(Error::Invalid {
                kind: "2-category",
                report,
            });
        }
        UnaryOperadic2Cat::new(cat, b.maps)
    }

    fn validate(&self) -> ValidationReport {
        validate_operadic(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct OperadBody {
    pub base: OperadicBody,
    pub fibers: Vec<CategoryBody>,
    pub mult: Vec<Bifunctor>,
    pub units: Vec<usize>,
}

impl Artifact for CategoricalOperad {
    const KIND: Kind = Kind::Operad;
    type Body = OperadBody;

    fn to_body(&self) -> OperadBody {
        OperadBody {
            base: self.base.to_body(),
            fibers: self.fibers.iter().map(Artifact::to_body).collect(),
            mult: self.mult.clone(),
            units: self.units.clone(),
        }
    }

    fn from_body(b: OperadBody) -> Result<Self> {
        Ok(CategoricalOperad {
            base: UnaryOperadic2Cat::from_body(b.base)?,
            fibers: b.fibers.into_iter().map(FiniteCategory::from_body).collect::<Result<_>>()?,
            mult: b.mult,
            units: b.units,
        })
    }

    fn validate(&self) -> ValidationReport {
        validate_operad(self)
    }
}

/// `level_map[k]` maps level `k` of the assembled simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct FunctorBody {
    pub source: OperadicBody,
    pub target: OperadicBody,
    pub level_map: Vec<Vec<usize>>,
}

impl Artifact for OperadicFunctor {
    const KIND: Kind = Kind::OperadicFunctor;
    type Body = FunctorBody;

    fn to_body(&self) -> FunctorBody {
        FunctorBody {
            source: self.source.to_body(),
            target: self.target.to_body(),
            level_map: self.map.level_map.clone(),
        }
    }

    fn from_body(b: FunctorBody) -> Result<Self> {
        let source = UnaryOperadic2Cat::from_body(b.source)?;
        let target = UnaryOperadic2Cat::from_body(b.target)?;
        OperadicFunctor::new(&source, &target, b.level_map)
    }

    fn validate(&self) -> ValidationReport {
        validate_operadic_functor(self)
    }
}

/// Lifts are `[a, b, g, lift]` for the key `(a, b, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct FibrationBody {
    pub functor: FunctorBody,
    pub lifts: Vec<[usize; 4]>,
}

impl Artifact for SplitFibration {
    const KIND: Kind = Kind::Fibration;
    type Body = FibrationBody;

    fn to_body(&self) -> FibrationBody {
        FibrationBody {
            functor: self.functor.to_body(),
            lifts: self.lift.iter().map(|(&(a, b, g), &l)| [a, b, g, l]).collect(),
        }
    }

    fn from_body(b: FibrationBody) -> Result<Self> {
        Ok(SplitFibration {
            functor: OperadicFunctor::from_body(b.functor)?,
            lift: b.lifts.iter().map(|&[a, b, g, l]| ((a, b, g), l)).collect(),
        })
    }

    fn validate(&self) -> ValidationReport {
        let mut r = validate_operadic_functor(&self.functor);
        if r.is_valid() {
            r.extend(check_split_fibration(self));
        }
        r
    }
}

impl Artifact for MonPresentation {
    const KIND: Kind = Kind::Presentation;
    type Body = MonPresentation;

    fn to_body(&self) -> MonPresentation {
        self.clone()
    }

    fn from_body(b: MonPresentation) -> Result<Self> {
        Ok(b)
    }

    fn validate(&self) -> ValidationReport {
        validate_presentation(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::grothendieck;

    fn round_trip<T: Artifact + PartialEq + std::fmt::Debug>(x: &T) {
        let text = save(x).unwrap();
        let back: T = load(&text).unwrap();
        assert_eq!(&back, x);
        assert_eq!(save(&back).unwrap(), text);
    }

    #[test]
    fn every_fixture_round_trips() {
        for n in fixtures::MONCATS {
            round_trip(&fixtures::moncat(n).unwrap());
        }
        for n in fixtures::TWOCATS {
            round_trip(&fixtures::twocat(n).unwrap());
        }
        for n in fixtures::OPERADIC {
            round_trip(&fixtures::operadic(n).unwrap());
        }
        for n in fixtures::OPERADS {
            round_trip(&fixtures::operad(n).unwrap());
        }
        round_trip(&TruncatedSimplicialSet::standard_simplex(3, 4).unwrap());
        round_trip(&crate::freemon::phi0(3).unwrap());
        let p = fixtures::operad("z2-odot").unwrap();
        let f = SplitFibration::from_grothendieck(&grothendieck(&p.base, &p).unwrap());
        round_trip(&f);
        round_trip(&f.functor);
    }

    #[test]
    fn every_example_name_resolves() {
        for n in example_names() {
            let (_, report) = validate_text(&example(n).unwrap()).unwrap();
            assert!(report.is_valid(), "{n}: {report}");
        }
        assert!(matches!(example("nope"), Err(Error::UnknownFixture { .. })));
    }

    #[test]
    fn kind_and_version_are_checked() {
        let text = save(&fixtures::arrow()).unwrap();
        assert!(load::<StrictMonCat>(&text).is_err());
        let bumped = text.replace("\"version\": 1", "\"version\": 2");
        assert!(matches!(read_envelope(&bumped), Err(Error::Malformed(_))));
        assert!(matches!(read_envelope("{"), Err(Error::Json(_))));
    }

    #[test]
    fn validate_text_dispatches_on_kind() {
        let text = save(&fixtures::operadic("odot").unwrap()).unwrap();
        let (kind, report) = validate_text(&text).unwrap();
        assert_eq!(kind, Kind::Operadic);
        assert!(report.is_valid());
    }
}
