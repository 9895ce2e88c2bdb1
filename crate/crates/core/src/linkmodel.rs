//! Double-point-free colored links in Σ×S¹: loops on Σ that neither meet
//! each other nor themselves and are null-homotopic, encoded as a nesting
//! forest. Provides the face data (Euler characteristics, gleams, sides) and
//! the shadow state sum over face colorings.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{fmt_dynkin, RootSystem, Weight, Q};
use crate::modular::LevelData;
use crate::weights::multiplicities_dynkin;

/// Default cap on the number of colorings visited by the shadow sum.
pub const DEFAULT_TERM_BUDGET: u64 = 100_000_000;

/// A loop, or the outer face, as referenced from a link description.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NodeRef {
    Outer,
    Loop(String),
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRef::Outer => write!(f, "outer"),
            NodeRef::Loop(id) => write!(f, "{id}"),
        }
    }
}

impl NodeRef {
    fn parse(s: &str) -> NodeRef {
        if s == "outer" {
            NodeRef::Outer
        } else {
            NodeRef::Loop(s.to_string())
        }
    }
}

/// One loop of the link: a simple closed curve on Σ times a point of S¹,
/// winding `winding` times around the S¹ direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopSpec {
    pub id: String,
    pub parent: NodeRef,
    pub winding: i64,
    /// Highest weight in fundamental-weight (Dynkin) coordinates.
    pub color: Vec<i64>,
    /// Whether the region enclosed by the loop is on its positive side.
    pub inner_is_plus: bool,
}

impl LoopSpec {
    pub fn color_weight(&self, rs: &RootSystem) -> Weight {
        rs.from_dynkin(&self.color)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceLink {
    pub genus: u32,
    pub loops: Vec<LoopSpec>,
    /// The face carrying the handles of Σ.
    pub genus_face: NodeRef,
}

impl SurfaceLink {
    pub fn empty(genus: u32) -> Self {
        SurfaceLink {
            genus,
            loops: Vec::new(),
            genus_face: NodeRef::Outer,
        }
    }

    /// One loop on Σ winding `winding` times along the fiber.
    pub fn single_loop(genus: u32, winding: i64, color: Vec<i64>, inner_is_plus: bool) -> Self {
        SurfaceLink {
            genus,
            loops: vec![LoopSpec {
                id: "1".into(),
                parent: NodeRef::Outer,
                winding,
                color,
                inner_is_plus,
            }],
            genus_face: NodeRef::Outer,
        }
    }

    /// Parent index per loop (`None` for roots), after checking that ids are
    /// unique, parents exist and the forest is acyclic.
    fn parents(&self) -> Result<Vec<Option<usize>>> {
        let mut ids: HashMap<&str, usize> = HashMap::new();
        for (i, l) in self.loops.iter().enumerate() {
            if l.id == "outer" || l.id.is_empty() {
                return Err(Error::InvalidLink(format!(
                    "'{}' is not a valid loop id",
                    l.id
                )));
            }
            if ids.insert(l.id.as_str(), i).is_some() {
                return Err(Error::InvalidLink(format!("duplicate loop id '{}'", l.id)));
            }
            if l.color.iter().any(|&c| c < 0) {
                return Err(Error::InvalidLink(format!(
                    "loop '{}' has non-dominant color {}",
                    l.id,
                    fmt_dynkin(&l.color)
                )));
            }
        }
        let parents = self
            .loops
            .iter()
            .map(|l| match &l.parent {
                NodeRef::Outer => Ok(None),
                NodeRef::Loop(p) => ids.get(p.as_str()).map(|&i| Some(i)).ok_or_else(|| {
                    Error::InvalidLink(format!("loop '{}' has unknown parent '{p}'", l.id))
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        for start in 0..parents.len() {
            let mut cur = parents[start];
            let mut steps = 0;
            while let Some(p) = cur {
                steps += 1;
                if p == start || steps > parents.len() {
                    return Err(Error::InvalidLink(format!(
                        "nesting cycle through loop '{}'",
                        self.loops[start].id
                    )));
                }
                cur = parents[p];
            }
        }
        if let NodeRef::Loop(g) = &self.genus_face {
            if !ids.contains_key(g.as_str()) {
                return Err(Error::InvalidLink(format!(
                    "genus_face '{g}' is not a face of the link"
                )));
            }
        }
        Ok(parents)
    }

    /// The link description in the text format read by [`parse_link`].
    pub fn to_text(&self) -> String {
        let mut s = format!("genus={}\n", self.genus);
        if self.genus_face != NodeRef::Outer {
            s += &format!("genus_face={}\n", self.genus_face);
        }
        for l in &self.loops {
            let color: Vec<String> = l.color.iter().map(|c| c.to_string()).collect();
            s += &format!(
                "loop {} parent={} winding={} color={} plus={}\n",
                l.id,
                l.parent,
                l.winding,
                color.join(","),
                if l.inner_is_plus { "inner" } else { "outer" }
            );
        }
        s
    }
}

/// One region of Σ minus the link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// `Outer` or the loop whose interior (minus its children) this face is.
    pub id: NodeRef,
    pub chi: i64,
    pub gleam: i64,
    /// Indices of the loops on its boundary.
    pub adjacent: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceData {
    /// Face 0 is the outer face, face `i + 1` belongs to loop `i`.
    pub faces: Vec<Face>,
    /// `(Y⁺, Y⁻)` face indices per loop.
    pub sides: Vec<(usize, usize)>,
    /// Face order with every face after the face surrounding it.
    pub order: Vec<usize>,
}

impl FaceData {
    pub fn total_chi(&self) -> i64 {
        self.faces.iter().map(|f| f.chi).sum()
    }
    pub fn total_gleam(&self) -> i64 {
        self.faces.iter().map(|f| f.gleam).sum()
    }
}

/// Face data of a link: χ(Y) = 2 − #boundary loops (minus 2g on the genus
/// face); gleam(Y) = Σ_l wind(l)·sgn(Y; l).
pub fn faces(link: &SurfaceLink) -> Result<FaceData> {
    let parents = link.parents()?;
    let n = link.loops.len();
    let outer_of = |i: usize| parents[i].map_or(0, |p| p + 1);
    let mut faces: Vec<Face> = std::iter::once(NodeRef::Outer)
        .chain(link.loops.iter().map(|l| NodeRef::Loop(l.id.clone())))
        .map(|id| Face {
            id,
            chi: 2,
            gleam: 0,
            adjacent: Vec::new(),
        })
        .collect();
    let mut sides = Vec::with_capacity(n);
    for (i, l) in link.loops.iter().enumerate() {
        let inner = i + 1;
        let outer = outer_of(i);
        let (plus, minus) = if l.inner_is_plus {
            (inner, outer)
        } else {
            (outer, inner)
        };
        faces[plus].gleam += l.winding;
        faces[minus].gleam -= l.winding;
        faces[inner].adjacent.push(i);
        faces[outer].adjacent.push(i);
        sides.push((plus, minus));
    }
    for f in faces.iter_mut() {
        f.adjacent.sort_unstable();
        f.chi = 2 - f.adjacent.len() as i64;
    }
    let gface = match &link.genus_face {
        NodeRef::Outer => 0,
        NodeRef::Loop(id) => {
            1 + link
                .loops
                .iter()
                .position(|l| &l.id == id)
                .expect("validated")
        }
    };
    faces[gface].chi -= 2 * i64::from(link.genus);

    // breadth-first face order from the outer face
    let mut order = vec![0usize];
    let mut head = 0;
    while head < order.len() {
        let f = order[head];
        head += 1;
        for i in 0..n {
            if outer_of(i) == f {
                order.push(i + 1);
            }
        }
    }
    debug_assert_eq!(order.len(), n + 1);
    Ok(FaceData {
        faces,
        sides,
        order,
    })
}

/// How the shadow state sum is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShadowMethod {
    /// Visit every face coloring in face order, pruning zero fusion factors.
    #[default]
    Enumerate,
    /// Contract the face tree leaf to root (one fusion matrix product per loop).
    Contract,
}

struct ShadowTerms {
    /// Face weights `d^χ θ^gleam` per face and label.
    weight: Vec<Vec<Complex64>>,
    /// `fusion[i][a][b] = N^{a}_{λ_i b}` for loop i.
    fusion: Vec<Vec<Vec<i64>>>,
    fd: FaceData,
}

fn shadow_terms(ld: &LevelData, link: &SurfaceLink) -> Result<ShadowTerms> {
    let fd = faces(link)?;
    let n = ld.len();
    let mut tables: HashMap<Vec<i64>, Vec<Vec<i64>>> = HashMap::new();
    let mut fusion = Vec::with_capacity(link.loops.len());
    for l in &link.loops {
        if l.color.len() != ld.rs().rank() {
            return Err(Error::InvalidLink(format!(
                "loop '{}' color {} has {} coordinates, rank is {}",
                l.id,
                fmt_dynkin(&l.color),
                l.color.len(),
                ld.rs().rank()
            )));
        }
        ld.label_index(&l.color)?;
        if !tables.contains_key(&l.color) {
            let t = multiplicities_dynkin(ld.rs(), &l.color)?;
            tables.insert(l.color.clone(), ld.fusion_matrix(&t));
        }
        fusion.push(tables[&l.color].clone());
    }
    let weight = fd
        .faces
        .iter()
        .map(|f| {
            (0..n)
                .map(|e| {
                    let d = ld.qdim(e).powi(f.chi as i32);
                    ld.theta_pow_dynkin(&ld.labels()[e], Q::from_integer(f.gleam)) * d
                })
                .collect()
        })
        .collect();
    Ok(ShadowTerms { weight, fusion, fd })
}

/// Number of colorings the enumeration visits at most.
pub fn shadow_term_estimate(ld: &LevelData, link: &SurfaceLink) -> f64 {
    (ld.len() as f64).powi(link.loops.len() as i32 + 1)
}

/// The shadow invariant |L| with the default enumeration and term budget.
pub fn shadow_invariant(ld: &LevelData, link: &SurfaceLink) -> Result<Complex64> {
    shadow_invariant_with(ld, link, ShadowMethod::Enumerate, DEFAULT_TERM_BUDGET)
}

/// `|L| = Σ_η Π_i N^{η(Y⁺_i)}_{λ_i η(Y⁻_i)} Π_Y d_{η(Y)}^{χ(Y)} θ_{η(Y)}^{gleam(Y)}`.
pub fn shadow_invariant_with(
    ld: &LevelData,
    link: &SurfaceLink,
    method: ShadowMethod,
    budget: u64,
) -> Result<Complex64> {
    let terms = shadow_terms(ld, link)?;
    match method {
        ShadowMethod::Enumerate => {
            let estimate = shadow_term_estimate(ld, link);
            if estimate > budget as f64 {
                return Err(Error::TermBudgetExceeded { estimate, budget });
            }
            Ok(enumerate(ld, &terms))
        }
        ShadowMethod::Contract => Ok(contract(ld, link, &terms)),
    }
}

fn enumerate(ld: &LevelData, t: &ShadowTerms) -> Complex64 {
    let n = ld.len();
    let order = &t.fd.order;
    // the loop whose inner face is order[j], checked once its outer face is set
    let owner: Vec<Option<usize>> = order.iter().map(|&f| f.checked_sub(1)).collect();

    fn rec(
        j: usize,
        acc: Complex64,
        colors: &mut Vec<usize>,
        order: &[usize],
        owner: &[Option<usize>],
        t: &ShadowTerms,
        n: usize,
    ) -> Complex64 {
        if j == order.len() {
            return acc;
        }
        let face = order[j];
        let mut total = Complex64::zero();
        for e in 0..n {
            colors[face] = e;
            let mut factor = t.weight[face][e];
            if let Some(i) = owner[j] {
                let (plus, minus) = t.fd.sides[i];
                let nval = t.fusion[i][colors[plus]][colors[minus]];
                if nval == 0 {
                    continue;
                }
                factor *= nval as f64;
            }
            total += rec(j + 1, acc * factor, colors, order, owner, t, n);
        }
        total
    }

    let faces = order.len();
    let parts = ld.exec().map_range(n, |e0| {
        let mut colors = vec![0usize; faces];
        colors[order[0]] = e0;
        let w0 = t.weight[order[0]][e0];
        rec(1, w0, &mut colors, order, &owner, t, n)
    });
    parts.into_iter().fold(Complex64::zero(), |a, b| a + b)
}

fn contract(ld: &LevelData, link: &SurfaceLink, t: &ShadowTerms) -> Complex64 {
    let n = ld.len();
    let fd = &t.fd;
    // message[f][e]: sum over colorings of the subtree inside face f given η(f) = e
    let mut message: Vec<Vec<Complex64>> = fd
        .faces
        .iter()
        .map(|_| vec![Complex64::new(1.0, 0.0); n])
        .collect();
    for &f in fd.order.iter().rev() {
        for e in 0..n {
            message[f][e] *= t.weight[f][e];
        }
        if f == 0 {
            break;
        }
        let i = f - 1;
        let (plus, _) = fd.sides[i];
        let parent = match &link.loops[i].parent {
            NodeRef::Outer => 0,
            NodeRef::Loop(id) => 1 + link.loops.iter().position(|l| &l.id == id).unwrap(),
        };
        let inner_plus = plus == f;
        let mut up = vec![Complex64::zero(); n];
        for (pe, slot) in up.iter_mut().enumerate() {
            let mut s = Complex64::zero();
            for e in 0..n {
                let nval = if inner_plus {
                    t.fusion[i][e][pe]
                } else {
                    t.fusion[i][pe][e]
                };
                if nval != 0 {
                    s += message[f][e] * nval as f64;
                }
            }
            *slot = s;
        }
        for e in 0..n {
            message[parent][e] *= up[e];
        }
    }
    message[0].iter().fold(Complex64::zero(), |a, b| a + b)
}

/// `|L| / |∅_Σ|`.
pub fn normalized_shadow(ld: &LevelData, link: &SurfaceLink) -> Result<Complex64> {
    normalized_shadow_with(ld, link, ShadowMethod::Enumerate, DEFAULT_TERM_BUDGET)
}

pub fn normalized_shadow_with(
    ld: &LevelData,
    link: &SurfaceLink,
    method: ShadowMethod,
    budget: u64,
) -> Result<Complex64> {
    let value = shadow_invariant_with(ld, link, method, budget)?;
    let empty = shadow_invariant_with(ld, &SurfaceLink::empty(link.genus), method, budget)?;
    Ok(value / empty)
}

fn parse_int<T: std::str::FromStr>(v: &str, line: usize, key: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::LinkParse {
        line,
        message: format!("{key}: '{v}' is not an integer"),
    })
}

/// Reads a link description:
///
/// ```text
/// genus=1
/// genus_face=outer
/// loop a parent=outer winding=2 color=1,0 plus=inner
/// ```
///
/// Blank lines and `#` comments are ignored; unknown keys are rejected.
pub fn parse_link(text: &str) -> Result<SurfaceLink> {
    let mut genus: Option<u32> = None;
    let mut genus_face: Option<NodeRef> = None;
    let mut loops = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::LinkParse { line, message };
        if let Some(rest) = content
            .strip_prefix("loop ")
            .or_else(|| content.strip_prefix("loop\t"))
        {
            let mut tokens = rest.split_whitespace();
            let id = tokens
                .next()
                .ok_or_else(|| err("loop without id".into()))?
                .to_string();
            if id.contains('=') {
                return Err(err(format!("loop id '{id}' must not contain '='")));
            }
            let mut seen = HashSet::new();
            let (mut parent, mut winding, mut color, mut plus) = (None, None, None, None);
            for tok in tokens {
                let (key, value) = tok
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected key=value, found '{tok}'")))?;
                if !seen.insert(key.to_string()) {
                    return Err(err(format!("duplicate key '{key}'")));
                }
                match key {
                    "parent" => parent = Some(NodeRef::parse(value)),
                    "winding" => winding = Some(parse_int::<i64>(value, line, key)?),
                    "color" => {
                        color = Some(
                            value
                                .split(',')
                                .map(|c| parse_int::<i64>(c, line, key))
                                .collect::<Result<Vec<_>>>()?,
                        )
                    }
                    "plus" => {
                        plus = Some(match value {
                            "inner" => true,
                            "outer" => false,
                            _ => {
                                return Err(err(format!(
                                    "plus must be inner or outer, found '{value}'"
                                )))
                            }
                        })
                    }
                    _ => return Err(err(format!("unknown key '{key}'"))),
                }
            }
            let missing = |k: &str| err(format!("loop '{id}' is missing {k}="));
            loops.push(LoopSpec {
                parent: parent.ok_or_else(|| missing("parent"))?,
                winding: winding.ok_or_else(|| missing("winding"))?,
                color: color.ok_or_else(|| missing("color"))?,
                inner_is_plus: plus.ok_or_else(|| missing("plus"))?,
                id,
            });
        } else if let Some((key, value)) = content.split_once('=') {
            match key.trim() {
                "genus" => {
                    if genus.replace(parse_int(value, line, "genus")?).is_some() {
                        return Err(err("duplicate genus".into()));
                    }
                }
                "genus_face" => {
                    if genus_face.replace(NodeRef::parse(value.trim())).is_some() {
                        return Err(err("duplicate genus_face".into()));
                    }
                }
                other => return Err(err(format!("unknown key '{other}'"))),
            }
        } else {
            return Err(err(format!("unrecognized line '{content}'")));
        }
    }
    let link = SurfaceLink {
        genus: genus.unwrap_or(0),
        loops,
        genus_face: genus_face.unwrap_or(NodeRef::Outer),
    };
    link.parents()?;
    Ok(link)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::CartanType;
    use crate::modular::level_data;
    use proptest::prelude::*;

    fn ld(s: &str, k: i64) -> LevelData {
        level_data(
            &RootSystem::new(s.parse::<CartanType>().unwrap()).unwrap(),
            k,
        )
        .unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol * (1.0 + b.norm())
    }

    #[test]
    fn face_examples() {
        let fd = faces(&SurfaceLink::empty(0)).unwrap();
        assert_eq!(fd.faces.len(), 1);
        assert_eq!((fd.faces[0].chi, fd.faces[0].gleam), (2, 0));

        let fd = faces(&SurfaceLink::single_loop(0, 5, vec![1], true)).unwrap();
        assert_eq!(fd.faces.len(), 2);
        assert_eq!((fd.faces[1].chi, fd.faces[1].gleam), (1, 5));
        assert_eq!((fd.faces[0].chi, fd.faces[0].gleam), (1, -5));
        assert_eq!(fd.sides, vec![(1, 0)]);

        let nested = parse_link(
            "genus=0\nloop a parent=outer winding=1 color=0 plus=inner\nloop b parent=a winding=2 color=0 plus=outer\n",
        )
        .unwrap();
        let fd = faces(&nested).unwrap();
        // inner disk (b), annulus (a), outer disk
        assert_eq!(fd.faces[2].chi, 1);
        assert_eq!(fd.faces[1].chi, 0);
        assert_eq!(fd.faces[0].chi, 1);
        assert_eq!(fd.faces[1].gleam, 1 + 2);
        assert_eq!(fd.faces[2].gleam, -2);
        assert_eq!(fd.faces[0].gleam, -1);
    }

    #[test]
    fn genus_face_carries_the_handles() {
        let mut link = SurfaceLink::single_loop(2, 0, vec![0], true);
        link.genus_face = NodeRef::Loop("1".into());
        let fd = faces(&link).unwrap();
        assert_eq!(fd.faces[1].chi, 1 - 4);
        assert_eq!(fd.total_chi(), 2 - 4);
        link.genus_face = NodeRef::Loop("zz".into());
        assert!(matches!(faces(&link), Err(Error::InvalidLink(_))));
    }

    #[test]
    fn parser_rejects_bad_input() {
        let bad = [
            "genus=x",
            "genus=1\ngenus=2",
            "loop a parent=outer winding=1 color=1 plus=inner colour=2",
            "loop a parent=outer winding=1 color=1",
            "loop a parent=b winding=1 color=1 plus=inner",
            "loop a parent=b winding=1 color=1 plus=inner\nloop b parent=a winding=1 color=1 plus=inner",
            "loop a parent=outer winding=1 color=1 plus=sideways",
            "loop a parent=outer winding=1 color=-1 plus=inner",
            "loop a parent=outer winding=1 winding=2 color=1 plus=inner",
            "frobnicate",
            "size=3",
        ];
        for b in bad {
            assert!(parse_link(b).is_err(), "{b}");
        }
        match parse_link("genus=0\n\n# comment\nloop a parent=outer winding=q color=1 plus=inner") {
            Err(Error::LinkParse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shadow_examples() {
        let a1 = ld("A1", 4);
        let e = shadow_invariant(&a1, &SurfaceLink::empty(0)).unwrap();
        assert!(close(
            e,
            Complex64::new(1.0 / (a1.s00() * a1.s00()), 0.0),
            1e-12
        ));
        let t = shadow_invariant(&a1, &SurfaceLink::empty(1)).unwrap();
        assert!(close(t, Complex64::new(3.0, 0.0), 1e-12));
        assert!(close(
            normalized_shadow(&a1, &SurfaceLink::empty(2)).unwrap(),
            Complex64::new(1.0, 0.0),
            1e-12
        ));

        // one winding-0 loop: the direct two-face expansion
        let b = ld("A2", 5);
        let table = multiplicities_dynkin(b.rs(), &[1, 0]).unwrap();
        let f = b.fusion_matrix(&table);
        let mut want = Complex64::zero();
        for e1 in 0..b.len() {
            for e2 in 0..b.len() {
                want += Complex64::new(f[e1][e2] as f64 * b.qdim(e1) * b.qdim(e2), 0.0);
            }
        }
        let got = shadow_invariant(&b, &SurfaceLink::single_loop(0, 0, vec![1, 0], true)).unwrap();
        assert!(close(got, want, 1e-12));

        for q in -3..4 {
            let z =
                normalized_shadow(&b, &SurfaceLink::single_loop(0, q, vec![0, 0], true)).unwrap();
            assert!(close(z, Complex64::new(1.0, 0.0), 1e-12));
        }
    }

    #[test]
    fn shadow_rejections() {
        let a1 = ld("A1", 4);
        assert!(matches!(
            shadow_invariant(&a1, &SurfaceLink::single_loop(0, 1, vec![3], true)),
            Err(Error::NotInLevelSet { .. })
        ));
        let link = SurfaceLink::single_loop(0, 1, vec![1], true);
        assert!(matches!(
            shadow_invariant_with(&a1, &link, ShadowMethod::Enumerate, 5),
            Err(Error::TermBudgetExceeded { .. })
        ));
    }

    fn arb_forest(max_loops: usize) -> impl Strategy<Value = SurfaceLink> {
        (
            0u32..4,
            prop::collection::vec(
                (
                    any::<prop::sample::Index>(),
                    -4i64..5,
                    any::<bool>(),
                    0i64..3,
                ),
                0..=max_loops,
            ),
            any::<prop::sample::Index>(),
        )
            .prop_map(|(genus, specs, gf)| {
                let mut loops = Vec::new();
                for (i, (pidx, winding, plus, c)) in specs.into_iter().enumerate() {
                    // parent among earlier loops or the outer face
                    let choice = pidx.index(i + 1);
                    let parent = if choice == 0 {
                        NodeRef::Outer
                    } else {
                        NodeRef::Loop(format!("l{}", choice - 1))
                    };
                    loops.push(LoopSpec {
                        id: format!("l{i}"),
                        parent,
                        winding,
                        color: vec![c],
                        inner_is_plus: plus,
                    });
                }
                let g = gf.index(loops.len() + 1);
                let genus_face = if g == 0 {
                    NodeRef::Outer
                } else {
                    NodeRef::Loop(format!("l{}", g - 1))
                };
                SurfaceLink {
                    genus,
                    loops,
                    genus_face,
                }
            })
    }

    proptest! {
        #[test]
        fn euler_and_gleam_sums(link in arb_forest(6)) {
            let fd = faces(&link).unwrap();
            prop_assert_eq!(fd.total_chi(), 2 - 2 * i64::from(link.genus));
            prop_assert_eq!(fd.total_gleam(), 0);
            for (i, _) in link.loops.iter().enumerate() {
                let touching = fd.faces.iter().filter(|f| f.adjacent.contains(&i)).count();
                prop_assert_eq!(touching, 2);
            }
        }

        #[test]
        fn text_round_trip(link in arb_forest(6)) {
            prop_assert_eq!(parse_link(&link.to_text()).unwrap(), link);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn enumeration_matches_contraction(link in arb_forest(3), k in 4i64..6) {
            let a1 = ld("A1", k);
            let e = shadow_invariant_with(&a1, &link, ShadowMethod::Enumerate, DEFAULT_TERM_BUDGET).unwrap();
            let c = shadow_invariant_with(&a1, &link, ShadowMethod::Contract, DEFAULT_TERM_BUDGET).unwrap();
            prop_assert!(close(e, c, 1e-10));
        }

        #[test]
        fn trivial_recoloring_is_invisible(link in arb_forest(3), pick in any::<prop::sample::Index>()) {
            prop_assume!(!link.loops.is_empty());
            let a1 = ld("A1", 5);
            let i = pick.index(link.loops.len());
            // a trivially colored loop behaves like no loop at all
            let mut zeroed = link.clone();
            zeroed.loops[i].color = vec![0];
            let mut other = zeroed.clone();
            other.loops[i].winding += 3;
            let a = normalized_shadow(&a1, &zeroed).unwrap();
            let b = normalized_shadow(&a1, &other).unwrap();
            prop_assert!(close(a, b, 1e-10));
        }

        #[test]
        fn flipping_side_and_winding(link in arb_forest(3), pick in any::<prop::sample::Index>()) {
            prop_assume!(!link.loops.is_empty());
            let i = pick.index(link.loops.len());
            // A1 colors are self-conjugate
            let a1 = ld("A1", 5);
            let mut flipped = link.clone();
            flipped.loops[i].inner_is_plus ^= true;
            flipped.loops[i].winding = -flipped.loops[i].winding;
            let a = shadow_invariant(&a1, &link).unwrap();
            let b = shadow_invariant(&a1, &flipped).unwrap();
            prop_assert!(close(a, b, 1e-10));
        }
    }

    #[test]
    fn flipping_a_complex_color_conjugates_it() {
        let a2 = ld("A2", 5);
        let link = parse_link(
            "loop a parent=outer winding=2 color=1,0 plus=inner\nloop b parent=a winding=-1 color=1,1 plus=outer\n",
        )
        .unwrap();
        let mut flipped = link.clone();
        flipped.loops[0].inner_is_plus = false;
        flipped.loops[0].winding = -2;
        flipped.loops[0].color = vec![0, 1];
        let a = shadow_invariant(&a2, &link).unwrap();
        let b = shadow_invariant(&a2, &flipped).unwrap();
        assert!(close(a, b, 1e-10));
    }
}
