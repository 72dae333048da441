//! The textual document format: JSON with an explicit `"bfly-format": 1`
//! version field and a `"kind"` tag, strict about unknown fields. Any field
//! holding a group or crossed module accepts either an inline value or
//! `{"ref": "sibling-file"}` resolved relative to the referencing document.

use crate::abelian::{validate_abelian_butterfly, validate_complex, AbelianButterfly, AbelianComplex};
use crate::braid::{validate_braiding, Braiding};
use crate::butterfly::{validate_butterfly, Butterfly};
use crate::error::{Error, Result};
use crate::functor::{validate_functor, AdditiveFunctor};
use crate::group::{validate_action, validate_hom, FiniteGroup, GroupHom};
use crate::xmod::{validate_homotopy, validate_strict, validate_xmod, CrossedModule, Homotopy, StrictMorphism};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const FORMAT_VERSION: u64 = 1;
const MAX_REF_DEPTH: usize = 16;

fn bad(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

/// An inline value or a reference to a sibling document.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum OrRef<T> {
    Ref(RefDoc),
    Inline(T),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RefDoc {
    #[serde(rename = "ref")]
    pub target: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub source: OrRef<GroupDoc>,
    pub target: OrRef<GroupDoc>,
    pub map: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct XmodDoc {
    pub g1: OrRef<GroupDoc>,
    pub g0: OrRef<GroupDoc>,
    pub delta: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StrictDoc {
    pub source: OrRef<XmodDoc>,
    pub target: OrRef<XmodDoc>,
    pub f1: Vec<usize>,
    pub f0: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HomotopyDoc {
    pub from: OrRef<StrictDoc>,
    pub to: OrRef<StrictDoc>,
    pub gamma: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ButterflyDoc {
    pub h: OrRef<XmodDoc>,
    pub g: OrRef<XmodDoc>,
    pub e: OrRef<GroupDoc>,
    pub kappa: Vec<usize>,
    pub iota: Vec<usize>,
    pub pi: Vec<usize>,
    pub j: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub source: OrRef<XmodDoc>,
    pub target: OrRef<XmodDoc>,
    pub f0: Vec<usize>,
    pub f1: Vec<Vec<usize>>,
    pub lambda: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BraidingDoc {
    pub xmod: OrRef<XmodDoc>,
    pub c: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub a_m1: OrRef<GroupDoc>,
    pub a_0: OrRef<GroupDoc>,
    pub d: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Group(GroupDoc),
    Hom(HomDoc),
    Xmod(XmodDoc),
    Strict(StrictDoc),
    Homotopy(HomotopyDoc),
    Butterfly(ButterflyDoc),
    Functor(FunctorDoc),
    Braiding(BraidingDoc),
    Complex(ComplexDoc),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Group(_) => "group",
            Payload::Hom(_) => "hom",
            Payload::Xmod(_) => "xmod",
            Payload::Strict(_) => "strict",
            Payload::Homotopy(_) => "homotopy",
            Payload::Butterfly(_) => "butterfly",
            Payload::Functor(_) => "functor",
            Payload::Braiding(_) => "braiding",
            Payload::Complex(_) => "complex",
        }
    }
}

fn from_value<T: DeserializeOwned>(v: serde_json::Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| bad(format!("malformed payload: {e}")))
}

pub fn parse_document(text: &str) -> Result<Payload> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| bad(format!("not valid JSON: {e}")))?;
    let mut obj = match v {
        serde_json::Value::Object(m) => m,
        _ => return Err(bad("document must be a JSON object")),
    };
    match obj.remove("bfly-format").and_then(|f| f.as_u64()) {
        Some(FORMAT_VERSION) => {}
        Some(n) => return Err(bad(format!("unsupported bfly-format {n}"))),
        None => return Err(bad("missing bfly-format field")),
    }
    let kind = match obj.remove("kind") {
        Some(serde_json::Value::String(s)) => s,
        _ => return Err(bad("missing kind field")),
    };
    let rest = serde_json::Value::Object(obj);
    Ok(match kind.as_str() {
        "group" => Payload::Group(from_value(rest)?),
        "hom" => Payload::Hom(from_value(rest)?),
        "xmod" => Payload::Xmod(from_value(rest)?),
        "strict" => Payload::Strict(from_value(rest)?),
        "homotopy" => Payload::Homotopy(from_value(rest)?),
        "butterfly" => Payload::Butterfly(from_value(rest)?),
        "functor" => Payload::Functor(from_value(rest)?),
        "braiding" => Payload::Braiding(from_value(rest)?),
        "complex" => Payload::Complex(from_value(rest)?),
        other => return Err(bad(format!("unknown kind {other:?}"))),
    })
}

/// Canonical rendering: one JSON object, keys sorted, two-space indent,
/// trailing newline. Writing and re-parsing gives back an equal payload.
pub fn render_document(p: &Payload) -> String {
    let body = match p {
        Payload::Group(d) => serde_json::to_value(d),
        Payload::Hom(d) => serde_json::to_value(d),
        Payload::Xmod(d) => serde_json::to_value(d),
        Payload::Strict(d) => serde_json::to_value(d),
        Payload::Homotopy(d) => serde_json::to_value(d),
        Payload::Butterfly(d) => serde_json::to_value(d),
        Payload::Functor(d) => serde_json::to_value(d),
        Payload::Braiding(d) => serde_json::to_value(d),
        Payload::Complex(d) => serde_json::to_value(d),
    }
    .expect("document payloads serialize");
    let mut obj = match body {
        serde_json::Value::Object(m) => m,
        _ => unreachable!("payloads are objects"),
    };
    obj.insert("bfly-format".into(), FORMAT_VERSION.into());
    obj.insert("kind".into(), p.kind().into());
    let mut out = serde_json::to_string_pretty(&serde_json::Value::Object(obj))
        .expect("JSON value renders");
    out.push('\n');
    out
}

pub fn read_document(path: &Path) -> Result<Payload> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn write_document(path: &Path, p: &Payload) -> Result<()> {
    std::fs::write(path, render_document(p))
        .map_err(|e| bad(format!("cannot write {}: {e}", path.display())))
}

/// Payload kinds that may be the target of a `{"ref": ...}` field.
pub trait Referable: Sized {
    fn expected() -> &'static str;
    fn unwrap_payload(p: Payload) -> Option<Self>;
}

impl Referable for GroupDoc {
    fn expected() -> &'static str {
        "group"
    }
    fn unwrap_payload(p: Payload) -> Option<Self> {
        match p {
            Payload::Group(d) => Some(d),
            _ => None,
        }
    }
}

impl Referable for XmodDoc {
    fn expected() -> &'static str {
        "xmod"
    }
    fn unwrap_payload(p: Payload) -> Option<Self> {
        match p {
            Payload::Xmod(d) => Some(d),
            _ => None,
        }
    }
}

impl Referable for StrictDoc {
    fn expected() -> &'static str {
        "strict"
    }
    fn unwrap_payload(p: Payload) -> Option<Self> {
        match p {
            Payload::Strict(d) => Some(d),
            _ => None,
        }
    }
}

impl<T: Referable + Clone> OrRef<T> {
    fn resolve(&self, dir: &Path, depth: usize) -> Result<T> {
        match self {
            OrRef::Inline(t) => Ok(t.clone()),
            OrRef::Ref(r) => {
                if depth >= MAX_REF_DEPTH {
                    return Err(bad("reference chain too deep (cycle?)"));
                }
                let path = dir.join(&r.target);
                let p = read_document(&path)?;
                let kind = p.kind();
                T::unwrap_payload(p).ok_or_else(|| {
                    bad(format!(
                        "{} refers to a {kind} document, expected {}",
                        path.display(),
                        T::expected()
                    ))
                })
            }
        }
    }
}

// conversions between documents and library values; `dir` anchors references

impl GroupDoc {
    pub fn to_group(&self) -> Result<FiniteGroup> {
        if self.order != self.table.len() {
            return Err(bad("order field disagrees with table size"));
        }
        FiniteGroup::from_table(&self.table, self.label.as_deref())
    }

    pub fn of(g: &FiniteGroup) -> GroupDoc {
        GroupDoc { order: g.order(), table: g.table_rows(), label: g.label.clone() }
    }
}

fn group_at<'a>(r: &OrRef<GroupDoc>, dir: &Path, depth: usize) -> Result<FiniteGroup> {
    r.resolve(dir, depth)?.to_group()
}

impl HomDoc {
    pub fn to_hom(&self, dir: &Path) -> Result<GroupHom> {
        let source = group_at(&self.source, dir, 0)?;
        let target = group_at(&self.target, dir, 0)?;
        validate_hom(&source, &target, &self.map)
    }

    pub fn of(h: &GroupHom) -> HomDoc {
        HomDoc {
            source: OrRef::Inline(GroupDoc::of(&h.source)),
            target: OrRef::Inline(GroupDoc::of(&h.target)),
            map: h.map.clone(),
        }
    }
}

impl XmodDoc {
    pub fn to_xmod(&self, dir: &Path) -> Result<CrossedModule> {
        let g1 = group_at(&self.g1, dir, 0)?;
        let g0 = group_at(&self.g0, dir, 0)?;
        let delta = validate_hom(&g1, &g0, &self.delta)?;
        let action = validate_action(&g0, &g1, &self.action)?;
        validate_xmod(&g1, &g0, &delta, &action)
    }

    pub fn of(xm: &CrossedModule) -> XmodDoc {
        XmodDoc {
            g1: OrRef::Inline(GroupDoc::of(&xm.g1)),
            g0: OrRef::Inline(GroupDoc::of(&xm.g0)),
            delta: xm.delta.map.clone(),
            action: xm.action.rows(),
        }
    }
}

impl StrictDoc {
    pub fn to_strict(&self, dir: &Path) -> Result<StrictMorphism> {
        let source = self.source.resolve(dir, 0)?.to_xmod(dir)?;
        let target = self.target.resolve(dir, 0)?.to_xmod(dir)?;
        let f1 = validate_hom(&source.g1, &target.g1, &self.f1)?;
        let f0 = validate_hom(&source.g0, &target.g0, &self.f0)?;
        validate_strict(&source, &target, &f1, &f0)
    }

    pub fn of(m: &StrictMorphism) -> StrictDoc {
        StrictDoc {
            source: OrRef::Inline(XmodDoc::of(&m.source)),
            target: OrRef::Inline(XmodDoc::of(&m.target)),
            f1: m.f1.map.clone(),
            f0: m.f0.map.clone(),
        }
    }
}

impl HomotopyDoc {
    pub fn to_homotopy(&self, dir: &Path) -> Result<Homotopy> {
        let from = self.from.resolve(dir, 0)?.to_strict(dir)?;
        let to = self.to.resolve(dir, 0)?.to_strict(dir)?;
        validate_homotopy(&from, &to, &self.gamma)
    }

    pub fn of(h: &Homotopy) -> HomotopyDoc {
        HomotopyDoc {
            from: OrRef::Inline(StrictDoc::of(&h.from)),
            to: OrRef::Inline(StrictDoc::of(&h.to)),
            gamma: h.gamma.clone(),
        }
    }
}

impl ButterflyDoc {
    pub fn to_butterfly(&self, dir: &Path) -> Result<Butterfly> {
        let h = self.h.resolve(dir, 0)?.to_xmod(dir)?;
        let g = self.g.resolve(dir, 0)?.to_xmod(dir)?;
        let e = group_at(&self.e, dir, 0)?;
        let kappa = validate_hom(&h.g1, &e, &self.kappa)?;
        let iota = validate_hom(&g.g1, &e, &self.iota)?;
        let pi = validate_hom(&e, &h.g0, &self.pi)?;
        let j = validate_hom(&e, &g.g0, &self.j)?;
        validate_butterfly(&h, &g, &e, &kappa, &iota, &pi, &j)
    }

    pub fn of(b: &Butterfly) -> ButterflyDoc {
        ButterflyDoc {
            h: OrRef::Inline(XmodDoc::of(&b.h)),
            g: OrRef::Inline(XmodDoc::of(&b.g)),
            e: OrRef::Inline(GroupDoc::of(&b.e)),
            kappa: b.kappa.map.clone(),
            iota: b.iota.map.clone(),
            pi: b.pi.map.clone(),
            j: b.j.map.clone(),
        }
    }
}

impl FunctorDoc {
    pub fn to_functor(&self, dir: &Path) -> Result<AdditiveFunctor> {
        let source = self.source.resolve(dir, 0)?.to_xmod(dir)?;
        let target = self.target.resolve(dir, 0)?.to_xmod(dir)?;
        validate_functor(&source, &target, &self.f0, &self.f1, &self.lambda)
    }

    pub fn of(f: &AdditiveFunctor) -> FunctorDoc {
        FunctorDoc {
            source: OrRef::Inline(XmodDoc::of(&f.source)),
            target: OrRef::Inline(XmodDoc::of(&f.target)),
            f0: f.f0.clone(),
            f1: f.f1.clone(),
            lambda: f.lambda.clone(),
        }
    }
}

impl BraidingDoc {
    pub fn to_braiding(&self, dir: &Path) -> Result<Braiding> {
        let xm = self.xmod.resolve(dir, 0)?.to_xmod(dir)?;
        validate_braiding(&xm, &self.c)
    }

    pub fn of(br: &Braiding) -> BraidingDoc {
        BraidingDoc { xmod: OrRef::Inline(XmodDoc::of(&br.xm)), c: br.c.clone() }
    }
}

impl ComplexDoc {
    pub fn to_complex(&self, dir: &Path) -> Result<AbelianComplex> {
        let a_m1 = group_at(&self.a_m1, dir, 0)?;
        let a_0 = group_at(&self.a_0, dir, 0)?;
        let d = validate_hom(&a_m1, &a_0, &self.d)?;
        validate_complex(&a_m1, &a_0, &d)
    }

    pub fn of(c: &AbelianComplex) -> ComplexDoc {
        ComplexDoc {
            a_m1: OrRef::Inline(GroupDoc::of(&c.a_m1)),
            a_0: OrRef::Inline(GroupDoc::of(&c.a_0)),
            d: c.d.map.clone(),
        }
    }
}

/// Read a butterfly document and reinterpret it as an abelian butterfly.
pub fn abelian_from_doc(d: &ButterflyDoc, dir: &Path) -> Result<AbelianButterfly> {
    let h = d.h.resolve(dir, 0)?.to_xmod(dir)?;
    let g = d.g.resolve(dir, 0)?.to_xmod(dir)?;
    let source = AbelianComplex::from_xmod(&h)?;
    let target = AbelianComplex::from_xmod(&g)?;
    let e = group_at(&d.e, dir, 0)?;
    let kappa = validate_hom(&source.a_m1, &e, &d.kappa)?;
    let iota = validate_hom(&target.a_m1, &e, &d.iota)?;
    let pi = validate_hom(&e, &source.a_0, &d.pi)?;
    let j = validate_hom(&e, &target.a_0, &d.j)?;
    validate_abelian_butterfly(&source, &target, &e, &kappa, &iota, &pi, &j)
}
