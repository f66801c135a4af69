//! Versioned JSON family files.
//!
//! A file declares the value space, the domain (ids with optional
//! coordinates), the functions as `name → one vector per domain id`, named
//! correction pools and center sets, and an optional grid block that turns
//! the family into a differentiable one. See `docs/family-file.md`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use mnc_core::ck::{CkFamily, GridComponent, GridDomain};
use mnc_core::examples::{ExampleSpec, Scale};
use mnc_core::family::{Domain, Function, FunctionFamily, PhiPool};
use mnc_core::{NormTag, SpaceTag, Vector};
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Pool names filled from the unnamed `phi_pool` and `gamma_centers` fields.
pub const DEFAULT_PHI_POOL: &str = "phi";
pub const DEFAULT_CENTERS: &str = "gamma_centers";

/// Ordered JSON object that rejects duplicate keys.
#[derive(Clone, Debug, PartialEq)]
pub struct UniqueMap<V>(pub Vec<(String, V)>);

impl<V> Default for UniqueMap<V> {
    fn default() -> Self {
        UniqueMap(Vec::new())
    }
}

impl<V> UniqueMap<V> {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<V: Serialize> Serialize for UniqueMap<V> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V_<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for V_<V> {
            type Value = UniqueMap<V>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with unique keys")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out: Vec<(String, V)> = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, V>()? {
                    if out.iter().any(|(e, _)| *e == k) {
                        return Err(serde::de::Error::custom(format!("duplicate name `{k}`")));
                    }
                    out.push((k, v));
                }
                Ok(UniqueMap(out))
            }
        }
        d.deserialize_map(V_(PhantomData))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceHeader {
    pub dim: usize,
    pub norm: String,
}

impl From<SpaceTag> for SpaceHeader {
    fn from(s: SpaceTag) -> Self {
        SpaceHeader {
            dim: s.dim,
            norm: s.norm.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<f64>>,
}

/// A pool member: a family function by name or an inline function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhiEntry {
    Name(String),
    Inline { name: String, values: Vec<Vec<f64>> },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pools {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_centers: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_pool: Option<Vec<PhiEntry>>,
    #[serde(default, skip_serializing_if = "UniqueMap::is_empty")]
    pub phi_pools: UniqueMap<Vec<PhiEntry>>,
    #[serde(default, skip_serializing_if = "UniqueMap::is_empty")]
    pub center_sets: UniqueMap<Vec<Vec<f64>>>,
}

impl Pools {
    fn is_empty(&self) -> bool {
        self == &Pools::default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub components: Vec<GridComponent>,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub space: SpaceHeader,
    pub domain: Vec<DomainEntry>,
    /// Space of the domain coordinates; defaults to Euclidean.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain_space: Option<SpaceHeader>,
    pub functions: UniqueMap<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Pools::is_empty")]
    pub pools: Pools,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridBlock>,
}

/// Finds source lines for validation messages by walking key occurrences.
struct Locator<'a> {
    text: &'a str,
}

enum Seg<'a> {
    Key(&'a str),
    Nth(&'a str, usize),
}

impl Locator<'_> {
    fn line(&self, path: &[Seg]) -> Option<usize> {
        let mut pos = 0;
        for seg in path {
            let (key, skip) = match seg {
                Seg::Key(k) => (*k, 0),
                Seg::Nth(k, n) => (*k, *n),
            };
            let pat = format!("\"{key}\"");
            for _ in 0..=skip {
                pos += self.text[pos..].find(&pat)? + pat.len();
            }
        }
        Some(self.text[..pos].matches('\n').count() + 1)
    }

    fn err(&self, path: &[Seg], msg: impl fmt::Display) -> CliError {
        match self.line(path) {
            Some(l) => CliError::input(format!("line {l}: {msg}")),
            None => CliError::input(msg.to_string()),
        }
    }
}

fn space_of(h: &SpaceHeader) -> mnc_core::Result<SpaceTag> {
    SpaceTag::new(h.dim, h.norm.parse::<NormTag>()?)
}

fn vector(space: &SpaceTag, c: &[f64]) -> mnc_core::Result<Vector> {
    let v = Vector::new(c.to_vec())?;
    space.check(&v)?;
    Ok(v)
}

/// Parses and validates a family file.
pub fn parse(text: &str) -> CliResult<ExampleSpec> {
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| syntax_error(text, &e))?;
    load(&file, text)
}

fn syntax_error(text: &str, e: &serde_json::Error) -> CliError {
    let full = e.to_string();
    let msg = full.rsplit_once(" at line ").map_or(full.as_str(), |(m, _)| m);
    let (mut line, mut column) = (e.line(), e.column());
    if let Some(name) = msg.strip_prefix("duplicate name `").and_then(|r| r.strip_suffix('`')) {
        let end: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum::<usize>() + column;
        if let Some(at) = text[..end.min(text.len())].rfind(&format!("\"{name}\"")) {
            line = text[..at].matches('\n').count() + 1;
            column = at - text[..at].rfind('\n').map_or(0, |p| p + 1) + 1;
        }
    }
    CliError::input(format!("line {line}, column {column}: {msg}"))
}

/// Builds the in-memory family, pools and grid from a parsed file.
pub fn load(file: &FamilyFile, text: &str) -> CliResult<ExampleSpec> {
    let loc = Locator { text };
    if file.version != SCHEMA_VERSION {
        return Err(loc.err(
            &[Seg::Key("version")],
            format!("unsupported schema version {} (expected {SCHEMA_VERSION})", file.version),
        ));
    }
    let space = space_of(&file.space).map_err(|e| loc.err(&[Seg::Key("space")], e))?;
    if file.domain.is_empty() {
        return Err(loc.err(&[Seg::Key("domain")], "empty domain"));
    }
    let labels: Vec<String> = file.domain.iter().map(|d| d.id.clone()).collect();
    let mut domain = Domain::new(labels).map_err(|e| loc.err(&[Seg::Key("domain")], e))?;
    let with_coords = file.domain.iter().filter(|d| d.coords.is_some()).count();
    if with_coords > 0 {
        if with_coords != file.domain.len() {
            let i = file.domain.iter().position(|d| d.coords.is_none()).unwrap_or(0);
            return Err(loc.err(
                &[Seg::Key("domain"), Seg::Nth("id", i)],
                "either every domain entry has coords or none does",
            ));
        }
        let first = file.domain[0].coords.as_ref().map_or(0, |c| c.len());
        let dspace = match &file.domain_space {
            Some(h) => space_of(h).map_err(|e| loc.err(&[Seg::Key("domain_space")], e))?,
            None => SpaceTag::new(first, NormTag::L2).map_err(|e| loc.err(&[Seg::Key("domain")], e))?,
        };
        let mut pts = Vec::with_capacity(file.domain.len());
        for (i, d) in file.domain.iter().enumerate() {
            let c = d.coords.as_deref().unwrap_or_default();
            pts.push(
                vector(&dspace, c)
                    .map_err(|e| loc.err(&[Seg::Key("domain"), Seg::Nth("coords", i)], format!("domain `{}`: {e}", d.id)))?,
            );
        }
        domain = domain.with_coords(dspace, pts).map_err(|e| loc.err(&[Seg::Key("domain")], e))?;
    }
    if file.functions.is_empty() {
        return Err(loc.err(&[Seg::Key("functions")], "no functions"));
    }
    let n = file.domain.len();
    let read_values = |name: &str, rows: &[Vec<f64>], path: &[Seg]| -> CliResult<Vec<Vector>> {
        if rows.len() != n {
            return Err(loc.err(
                path,
                format!("function `{name}` has {} values, domain has {n} points", rows.len()),
            ));
        }
        rows.iter()
            .enumerate()
            .map(|(i, r)| {
                vector(&space, r).map_err(|e| loc.err(path, format!("function `{name}` at `{}`: {e}", file.domain[i].id)))
            })
            .collect()
    };
    let mut functions = Vec::with_capacity(file.functions.0.len());
    for (name, rows) in &file.functions.0 {
        let values = read_values(name, rows, &[Seg::Key("functions"), Seg::Key(name)])?;
        functions.push(Function::new(name.clone(), values));
    }
    let family = FunctionFamily::new(domain, space, functions).map_err(|e| loc.err(&[Seg::Key("functions")], e))?;

    let read_pool = |pool_name: &str, entries: &[PhiEntry]| -> CliResult<PhiPool> {
        let at = [Seg::Key("pools"), Seg::Key(pool_name)];
        let mut cands = Vec::with_capacity(entries.len());
        for e in entries {
            match e {
                PhiEntry::Name(f) => {
                    let g = family
                        .get(f)
                        .ok_or_else(|| loc.err(&at, format!("pool `{pool_name}` names unknown function `{f}`")))?;
                    cands.push(g.clone());
                }
                PhiEntry::Inline { name, values } => {
                    cands.push(Function::new(name.clone(), read_values(name, values, &at)?));
                }
            }
        }
        if cands.is_empty() {
            return Err(loc.err(&at, format!("pool `{pool_name}` is empty")));
        }
        PhiPool::new(&family, cands).map_err(|e| loc.err(&at, e))
    };
    let mut phi_pools = BTreeMap::new();
    if let Some(entries) = &file.pools.phi_pool {
        phi_pools.insert(DEFAULT_PHI_POOL.to_string(), read_pool("phi_pool", entries)?);
    }
    for (name, entries) in &file.pools.phi_pools.0 {
        if phi_pools.insert(name.clone(), read_pool(name, entries)?).is_some() {
            return Err(loc.err(&[Seg::Key("pools"), Seg::Key(name)], format!("pool `{name}` declared twice")));
        }
    }
    let read_centers = |name: &str, rows: &[Vec<f64>]| -> CliResult<Vec<Vector>> {
        rows.iter()
            .map(|r| vector(&space, r).map_err(|e| loc.err(&[Seg::Key("pools"), Seg::Key(name)], e)))
            .collect()
    };
    let mut center_pools = BTreeMap::new();
    if let Some(rows) = &file.pools.gamma_centers {
        center_pools.insert(DEFAULT_CENTERS.to_string(), read_centers("gamma_centers", rows)?);
    }
    for (name, rows) in &file.pools.center_sets.0 {
        if center_pools.insert(name.clone(), read_centers(name, rows)?).is_some() {
            return Err(loc.err(&[Seg::Key("pools"), Seg::Key(name)], format!("center set `{name}` declared twice")));
        }
    }

    let ck = match &file.grid {
        None => None,
        Some(g) => {
            let grid = GridDomain::new(g.components.clone()).map_err(|e| loc.err(&[Seg::Key("grid")], e))?;
            Some(CkFamily::differentiate(family.clone(), grid, g.order).map_err(|e| loc.err(&[Seg::Key("grid")], e))?)
        }
    };
    Ok(ExampleSpec {
        name: file.name.clone().unwrap_or_else(|| "file".into()),
        scale: Scale::new(),
        family,
        ck,
        phi_pools,
        center_pools,
        rows: Vec::new(),
        alpha_cap: 0,
    })
}

fn raw(vs: &[Vector]) -> Vec<Vec<f64>> {
    vs.iter().map(|v| v.coords().to_vec()).collect()
}

/// Writes a family with its pools and grid as a file that [`parse`] maps back
/// to the same in-memory objects.
pub fn export(ex: &ExampleSpec) -> FamilyFile {
    let m = &ex.family;
    let coords = m.domain().coords();
    let domain = m
        .domain()
        .labels()
        .iter()
        .enumerate()
        .map(|(i, id)| DomainEntry {
            id: id.clone(),
            coords: coords.map(|c| c.points[i].coords().to_vec()),
        })
        .collect();
    let entry = |g: &Function| match m.get(&g.name) {
        Some(f) if f.values == g.values => PhiEntry::Name(g.name.clone()),
        _ => PhiEntry::Inline {
            name: g.name.clone(),
            values: raw(&g.values),
        },
    };
    let pools = Pools {
        gamma_centers: None,
        phi_pool: None,
        phi_pools: UniqueMap(
            ex.phi_pools
                .iter()
                .map(|(k, p)| (k.clone(), p.candidates().iter().map(entry).collect()))
                .collect(),
        ),
        center_sets: UniqueMap(ex.center_pools.iter().map(|(k, c)| (k.clone(), raw(c))).collect()),
    };
    FamilyFile {
        version: SCHEMA_VERSION,
        name: Some(ex.name.clone()),
        space: m.space().into(),
        domain,
        domain_space: coords.map(|c| c.space.into()),
        functions: UniqueMap(m.functions().iter().map(|f| (f.name.clone(), raw(&f.values))).collect()),
        pools,
        grid: ex.ck.as_ref().map(|ck| GridBlock {
            components: ck.grid().components().to_vec(),
            order: ck.order(),
        }),
    }
}

pub fn to_json(file: &FamilyFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("serializable file");
    s.push('\n');
    s
}
