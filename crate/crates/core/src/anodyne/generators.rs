use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::decorations::{CategoricalPattern, Decorated, MarkedSSet, ScaledSSet};
use crate::sset::{horn, join, left_cone, pushout, seq_label, simplex, simplex_subcomplex, FiniteSimplicialSet, GenId, SimplexRef, SimplicialMap};
use crate::{Error, Result};

/// Which generating family a decorated map belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum GeneratorKind {
    A { n: usize, i: usize },
    B,
    C { n: usize },
    A0,
    A1,
    B0,
    B1 { cone: usize },
    C0 { n: usize },
    C1 { n: usize, i: usize },
    C2 { n: usize, cone: usize },
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::A { n, i } => write!(f, "A({n},{i})"),
            GeneratorKind::B => write!(f, "B"),
            GeneratorKind::C { n } => write!(f, "C({n})"),
            GeneratorKind::A0 => write!(f, "A0"),
            GeneratorKind::A1 => write!(f, "A1"),
            GeneratorKind::B0 => write!(f, "B0"),
            GeneratorKind::B1 { cone } => write!(f, "B1[{cone}]"),
            GeneratorKind::C0 { n } => write!(f, "C0({n})"),
            GeneratorKind::C1 { n, i } => write!(f, "C1({n},{i})"),
            GeneratorKind::C2 { n, cone } => write!(f, "C2({n})[{cone}]"),
        }
    }
}

/// A decoration-preserving map between decorated sets, optionally lying over
/// the base of a categorical pattern via `over : target -> S`.
#[derive(Clone, Debug)]
pub struct DecoratedMap<D> {
    pub source: D,
    pub target: D,
    pub map: SimplicialMap,
    pub kind: GeneratorKind,
    pub over: Option<SimplicialMap>,
}

impl<D: Decorated> DecoratedMap<D> {
    pub fn is_mono(&self) -> bool {
        self.map.is_mono()
    }

    pub fn preserves_decorations(&self) -> bool {
        self.source.preserved_by(&self.map, &self.target)
    }

    pub fn validate(&self) -> Result<()> {
        self.map.validate(self.source.base(), self.target.base())
    }
}

/// Inclusion between complexes whose shared cells carry the same labels.
pub(crate) fn inclusion_by_labels(src: &FiniteSimplicialSet, tgt: &FiniteSimplicialSet) -> Result<SimplicialMap> {
    let images = (0..=src.top_dim())
        .map(|d| {
            src.gens(d)
                .map(|g| tgt.gen_by_label(src.label(g)).map(SimplexRef::nondeg).ok_or_else(|| Error::UnknownLabel(src.label(g).to_string())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap::new(images))
}

/// Vertex numbers of a generator of a simplicial subset of `Δⁿ`.
pub(crate) fn delta_vertices(sub: &FiniteSimplicialSet, g: GenId) -> Vec<usize> {
    sub.vertices(&SimplexRef::nondeg(g)).iter().map(|&v| sub.label(v).parse().expect("vertex labels of Δⁿ are numbers")).collect()
}

/// The map from a simplicial subset of `Δⁿ` to `S` determined by an
/// `n`-simplex `x` of `S`.
pub fn delta_map(sub: &FiniteSimplicialSet, s: &FiniteSimplicialSet, x: &SimplexRef) -> SimplicialMap {
    SimplicialMap::new((0..=sub.top_dim()).map(|d| sub.gens(d).map(|g| s.restrict(x, &delta_vertices(sub, g))).collect()).collect())
}

fn thin_by_labels(base: FiniteSimplicialSet, labels: &[String]) -> ScaledSSet {
    let cells: BTreeSet<GenId> = labels.iter().filter_map(|l| base.gen_by_label(l)).collect();
    ScaledSSet::from_parts(base, cells).expect("labels name triangles")
}

fn marked_by_labels(base: FiniteSimplicialSet, labels: &[String]) -> MarkedSSet {
    let cells: BTreeSet<GenId> = labels.iter().filter_map(|l| base.gen_by_label(l)).collect();
    MarkedSSet::from_parts(base, cells).expect("labels name edges")
}

/// The thin triangles of `Δ⁴` in the source of generator (B).
pub const B_SOURCE_THIN: [&str; 5] = ["024", "123", "013", "134", "012"];
/// The triangles generator (B) adds.
pub const B_ADDED_THIN: [&str; 2] = ["014", "034"];

/// Collapses the edge `01` of a simplicial subset of `Δⁿ` to a point.
fn collapse_01(x: &FiniteSimplicialSet, n: usize) -> Result<FiniteSimplicialSet> {
    let e = simplex_subcomplex(n, &[vec![0, 1]])?;
    let pt = simplex_subcomplex(0, &[vec![0]])?;
    let f = inclusion_by_labels(&e, x)?;
    let v = GenId::new(0, 0);
    let g = SimplicialMap::new(vec![vec![SimplexRef::nondeg(v), SimplexRef::nondeg(v)], vec![SimplexRef { gen: v, word: vec![0] }]]);
    Ok(pushout(&e, x, &pt, &f, &g).set)
}

/// The generators of the scaled-anodyne class: `A(n,i)`, `B` and `C(n)`.
pub fn scaled_generator(kind: GeneratorKind) -> Result<DecoratedMap<ScaledSSet>> {
    match kind {
        GeneratorKind::A { n, i } => {
            if i == 0 || i >= n {
                return Err(Error::Precondition(format!("A({n},{i}) needs 0 < i < n")));
            }
            let thin = vec![seq_label(&[i - 1, i, i + 1])];
            let source = thin_by_labels(horn(n, i)?, &thin);
            let target = thin_by_labels(simplex(n), &thin);
            let map = inclusion_by_labels(&source.base, &target.base)?;
            Ok(DecoratedMap { source, target, map, kind, over: None })
        }
        GeneratorKind::B => {
            let base = simplex(4);
            let src: Vec<String> = B_SOURCE_THIN.iter().map(|s| s.to_string()).collect();
            let tgt: Vec<String> = src.iter().cloned().chain(B_ADDED_THIN.iter().map(|s| s.to_string())).collect();
            let map = SimplicialMap::identity(&base);
            Ok(DecoratedMap { source: thin_by_labels(base.clone(), &src), target: thin_by_labels(base, &tgt), map, kind, over: None })
        }
        GeneratorKind::C { n } => {
            if n <= 2 {
                return Err(Error::Precondition(format!("C({n}) needs n > 2")));
            }
            let thin = vec![seq_label(&[0, 1, n])];
            let source = thin_by_labels(collapse_01(&horn(n, 0)?, n)?, &thin);
            let target = thin_by_labels(collapse_01(&simplex(n), n)?, &thin);
            let map = inclusion_by_labels(&source.base, &target.base)?;
            Ok(DecoratedMap { source, target, map, kind, over: None })
        }
        other => Err(Error::Precondition(format!("{other} is not a scaled-anodyne family"))),
    }
}

/// Parameters of a pattern-anodyne generator: simplices are maps `Δⁿ -> S`
/// given as `n`-simplices of the pattern base.
#[derive(Clone, Debug)]
pub enum PatternSpec {
    A0(SimplexRef),
    A1(SimplicialMap),
    B0(SimplexRef),
    B1(usize),
    C0(SimplexRef),
    C1(SimplexRef, usize),
    C2 { cone: usize, n: usize, map: SimplicialMap },
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}

/// The generators of the pattern-anodyne class over `pattern`.
pub fn pattern_generator(spec: &PatternSpec, pattern: &CategoricalPattern) -> Result<DecoratedMap<MarkedSSet>> {
    let s = &pattern.base;
    let check_simplex = |x: &SimplexRef, d: usize| -> Result<()> {
        s.check_ref(x)?;
        require(x.dim() == d, || format!("expected a {d}-simplex of the base, got {}", s.ref_label(x)))
    };
    match spec {
        PatternSpec::A0(x) => {
            check_simplex(x, 2)?;
            require(pattern.is_thin(x), || format!("A0: triangle {} is not in T", s.ref_label(x)))?;
            for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                let e = s.edge(x, a, b);
                require(pattern.is_marked(&e), || format!("A0: edge {} is not in M_S", s.ref_label(&e)))?;
            }
            let base = simplex(2);
            let source = marked_by_labels(base.clone(), &["01".into(), "12".into()]);
            let target = MarkedSSet::sharp(&base);
            let over = delta_map(&base, s, x);
            Ok(DecoratedMap { source, target, map: SimplicialMap::identity(&base), kind: GeneratorKind::A0, over: Some(over) })
        }
        PatternSpec::A1(q) => {
            let base = crate::sset::collapsed_k();
            q.validate(&base, s)?;
            for e in base.gens(1) {
                require(pattern.is_marked(q.image_of_gen(e)), || format!("A1: edge {} of Q leaves M_S", base.label(e)))?;
            }
            for t in base.gens(2) {
                require(pattern.is_thin(q.image_of_gen(t)), || format!("A1: triangle {} of Q leaves T", base.label(t)))?;
            }
            Ok(DecoratedMap {
                source: MarkedSSet::flat(&base),
                target: MarkedSSet::sharp(&base),
                map: SimplicialMap::identity(&base),
                kind: GeneratorKind::A1,
                over: Some(q.clone()),
            })
        }
        PatternSpec::B0(e) => {
            check_simplex(e, 1)?;
            require(pattern.is_marked(e), || format!("B0: edge {} is not in M_S", s.ref_label(e)))?;
            let src = simplex_subcomplex(1, &[vec![0]])?;
            let tgt = simplex(1);
            let map = inclusion_by_labels(&src, &tgt)?;
            let over = delta_map(&tgt, s, e);
            Ok(DecoratedMap { source: MarkedSSet::sharp(&src), target: MarkedSSet::sharp(&tgt), map, kind: GeneratorKind::B0, over: Some(over) })
        }
        PatternSpec::B1(alpha) => {
            let cone = pattern.cones.get(*alpha).ok_or(Error::IndexOutOfRange { index: *alpha, limit: pattern.cones.len() })?;
            let tgt = left_cone(&cone.k);
            let map = inclusion_by_labels(&cone.k, &tgt)?;
            Ok(DecoratedMap {
                source: MarkedSSet::sharp(&cone.k),
                target: MarkedSSet::sharp(&tgt),
                map,
                kind: GeneratorKind::B1 { cone: *alpha },
                over: Some(cone.map.clone()),
            })
        }
        PatternSpec::C0(x) => {
            let n = x.dim();
            require(n > 1, || format!("C0 needs n > 1, got {n}"))?;
            s.check_ref(x)?;
            let t = s.restrict(x, &[0, 1, n]);
            require(pattern.is_thin(&t), || format!("C0: restriction {} to {{0,1,n}} is not in T", s.ref_label(&t)))?;
            let e01 = vec!["01".to_string()];
            let source = marked_by_labels(horn(n, 0)?, &e01);
            let target = marked_by_labels(simplex(n), &e01);
            let map = inclusion_by_labels(&source.base, &target.base)?;
            let over = delta_map(&target.base, s, x);
            Ok(DecoratedMap { source, target, map, kind: GeneratorKind::C0 { n }, over: Some(over) })
        }
        PatternSpec::C1(x, i) => {
            let n = x.dim();
            s.check_ref(x)?;
            require(*i > 0 && *i < n, || format!("C1 needs 0 < i < n, got ({n},{i})"))?;
            let source = MarkedSSet::flat(&horn(n, *i)?);
            let target = MarkedSSet::flat(&simplex(n));
            let map = inclusion_by_labels(&source.base, &target.base)?;
            let over = delta_map(&target.base, s, x);
            Ok(DecoratedMap { source, target, map, kind: GeneratorKind::C1 { n, i: *i }, over: Some(over) })
        }
        PatternSpec::C2 { cone: alpha, n, map } => c2(pattern, *alpha, *n, map),
    }
}

/// `(∂Δⁿ ⋆ K)♭ ⨿ ({n} ⋆ K)♯ ⊆ (Δⁿ ⋆ K)♭ ⨿ ({n} ⋆ K)♯` over `f : Δⁿ ⋆ K -> S`.
fn c2(pattern: &CategoricalPattern, alpha: usize, n: usize, f: &SimplicialMap) -> Result<DecoratedMap<MarkedSSet>> {
    require(n >= 1, || "C2 needs n ≥ 1".into())?;
    let cone = pattern.cones.get(alpha).ok_or(Error::IndexOutOfRange { index: alpha, limit: pattern.cones.len() })?;
    let k = &cone.k;
    let dn = simplex(n);
    let tgt = join(&dn, k);
    f.validate(&tgt, &pattern.base)?;
    let clash = tgt.gen_by_label("L:0").is_some() && k.all_gens().next().is_some_and(|g| tgt.gen_by_label(&format!("R:{}", k.label(g))).is_some());
    let lx = |l: &str| if clash { format!("L:{l}") } else { l.to_string() };
    let ly = |l: &str| if clash { format!("R:{l}") } else { l.to_string() };
    // which vertices of the join come from Δⁿ, by vertex number
    let left: Vec<Option<usize>> = tgt.gens(0).map(|v| (0..=n).find(|&i| tgt.label(v) == lx(&i.to_string()))).collect();
    let left_part = |g: GenId| -> BTreeSet<usize> { tgt.vertices(&SimplexRef::nondeg(g)).iter().filter_map(|v| left[v.idx]).collect() };
    let keep: BTreeSet<GenId> = tgt.all_gens().filter(|&g| left_part(g).len() < n + 1).collect();
    let (src, incl) = tgt.subcomplex(&keep)?;
    let marked_t: BTreeSet<GenId> = tgt.gens(1).filter(|&e| left_part(e).iter().all(|&i| i == n)).collect();
    let marked_s: BTreeSet<GenId> = src.gens(1).filter(|&e| marked_t.contains(&incl.image_of_gen(e).gen)).collect();
    // f restricted to {n} ⋆ K must be p_α
    let lc = left_cone(k);
    for g in lc.all_gens() {
        let l = lc.label(g);
        let name = if l == "*" {
            lx(&n.to_string())
        } else if let Some(rest) = l.strip_prefix("**") {
            format!("{}*{}", lx(&n.to_string()), ly(rest))
        } else {
            ly(l)
        };
        let h = tgt.gen_by_label(&name).ok_or_else(|| Error::Precondition(format!("C2: cannot match cone cell {l}")))?;
        require(*f.image_of_gen(h) == *cone.map.image_of_gen(g), || format!("C2: map disagrees with p_{alpha} on {l}"))?;
    }
    Ok(DecoratedMap {
        source: MarkedSSet::from_parts(src, marked_s)?,
        target: MarkedSSet::from_parts(tgt, marked_t)?,
        map: incl,
        kind: GeneratorKind::C2 { n, cone: alpha },
        over: Some(f.clone()),
    })
}
