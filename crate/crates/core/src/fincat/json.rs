//! JSON encodings. Objects are named by strings, arrows by unique ids, and
//! composition is listed as `[g, f, g∘f]` triples of non-identity arrows.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Arrow, CatError, FinCat, FinFunctor, SetValuedFunctor};

/// A schema violation, located by a JSON pointer into the input.
#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{pointer}: {message}")]
    Invalid { pointer: String, message: String },
}

impl SchemaError {
    pub fn at(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError::Invalid { pointer: pointer.into(), message: message.into() }
    }

    /// Prefixes the pointer with an enclosing path.
    pub fn nest(self, prefix: &str) -> Self {
        match self {
            SchemaError::Invalid { pointer, message } => SchemaError::Invalid { pointer: format!("{prefix}{pointer}"), message },
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCatJson {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub identities: Vec<String>,
    pub composition: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinFunctorJson {
    pub dom: FinCatJson,
    pub cod: FinCatJson,
    pub omap: BTreeMap<String, String>,
    pub amap: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFunctorJson {
    pub dom: FinCatJson,
    pub sizes: BTreeMap<String, usize>,
    pub maps: BTreeMap<String, Vec<usize>>,
}

/// Unique arrow ids: names, disambiguated by index when names repeat.
pub fn arrow_ids(c: &FinCat) -> Vec<String> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for a in c.arrows() {
        *count.entry(a.name.as_str()).or_default() += 1;
    }
    c.arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| if count[a.name.as_str()] == 1 { a.name.clone() } else { format!("{}#{i}", a.name) })
        .collect()
}

/// Unique object names, disambiguated the same way.
pub fn object_ids(c: &FinCat) -> Vec<String> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for o in c.object_names() {
        *count.entry(o.as_str()).or_default() += 1;
    }
    c.object_names()
        .iter()
        .enumerate()
        .map(|(i, o)| if count[o.as_str()] == 1 { o.clone() } else { format!("{o}#{i}") })
        .collect()
}

impl FinCatJson {
    pub fn from_cat(c: &FinCat) -> Self {
        let objs = object_ids(c);
        let ids = arrow_ids(c);
        let arrows = c
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| ArrowJson { id: ids[i].clone(), src: objs[a.src].clone(), tgt: objs[a.tgt].clone() })
            .collect();
        let identities = c.identities().iter().map(|&i| ids[i].clone()).collect();
        let composition = c
            .composable_triples()
            .into_iter()
            .map(|(g, f, h)| [ids[g].clone(), ids[f].clone(), ids[h].clone()])
            .collect();
        FinCatJson { objects: objs, arrows, identities, composition }
    }

    pub fn to_cat(&self) -> Result<FinCat, SchemaError> {
        let obj = index(&self.objects, "/objects")?;
        let ids: Vec<String> = self.arrows.iter().map(|a| a.id.clone()).collect();
        let arr = index(&ids, "/arrows")?;
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (i, a) in self.arrows.iter().enumerate() {
            let src = lookup(&obj, &a.src, &format!("/arrows/{i}/src"))?;
            let tgt = lookup(&obj, &a.tgt, &format!("/arrows/{i}/tgt"))?;
            arrows.push(Arrow { name: a.id.clone(), src, tgt });
        }
        if self.identities.len() != self.objects.len() {
            return Err(SchemaError::at("/identities", "one identity per object required"));
        }
        let mut identity = Vec::with_capacity(self.identities.len());
        for (i, name) in self.identities.iter().enumerate() {
            identity.push(lookup(&arr, name, &format!("/identities/{i}"))?);
        }
        let mut table = HashMap::new();
        for (i, [g, f, h]) in self.composition.iter().enumerate() {
            let p = format!("/composition/{i}");
            let key = (lookup(&arr, g, &p)?, lookup(&arr, f, &p)?);
            if table.insert(key, lookup(&arr, h, &p)?).is_some() {
                return Err(SchemaError::at(p, "duplicate composite"));
            }
        }
        let is_id: Vec<bool> = (0..arrows.len()).map(|i| identity.contains(&i)).collect();
        FinCat::from_parts(self.objects.clone(), arrows, identity, |g, f| {
            if is_id[g] {
                Some(f)
            } else if is_id[f] {
                Some(g)
            } else {
                table.get(&(g, f)).copied()
            }
        })
        .map_err(|e| cat_error("/composition", e))
    }
}

impl FinFunctorJson {
    pub fn from_functor(f: &FinFunctor) -> Self {
        let (so, sa) = (object_ids(&f.dom), arrow_ids(&f.dom));
        let (to, ta) = (object_ids(&f.cod), arrow_ids(&f.cod));
        FinFunctorJson {
            dom: FinCatJson::from_cat(&f.dom),
            cod: FinCatJson::from_cat(&f.cod),
            omap: f.omap.iter().enumerate().map(|(x, &y)| (so[x].clone(), to[y].clone())).collect(),
            amap: f.amap.iter().enumerate().map(|(a, &b)| (sa[a].clone(), ta[b].clone())).collect(),
        }
    }

    pub fn to_functor(&self) -> Result<FinFunctor, SchemaError> {
        let dom = Arc::new(self.dom.to_cat().map_err(|e| e.nest("/dom"))?);
        let cod = Arc::new(self.cod.to_cat().map_err(|e| e.nest("/cod"))?);
        let (so, sa) = (index(&object_ids(&dom), "/dom")?, index(&arrow_ids(&dom), "/dom")?);
        let (to, ta) = (index(&object_ids(&cod), "/cod")?, index(&arrow_ids(&cod), "/cod")?);
        let mut omap = vec![usize::MAX; dom.num_objects()];
        for (x, y) in &self.omap {
            let p = format!("/omap/{x}");
            omap[lookup(&so, x, &p)?] = lookup(&to, y, &p)?;
        }
        let mut amap = vec![usize::MAX; dom.num_arrows()];
        for (a, b) in &self.amap {
            let p = format!("/amap/{a}");
            amap[lookup(&sa, a, &p)?] = lookup(&ta, b, &p)?;
        }
        if omap.contains(&usize::MAX) || amap.contains(&usize::MAX) {
            return Err(SchemaError::at("/omap", "functor tables must be total"));
        }
        FinFunctor::new(dom, cod, omap, amap).map_err(|e| cat_error("", e))
    }
}

impl SetFunctorJson {
    pub fn from_functor(f: &SetValuedFunctor) -> Self {
        let (objs, ids) = (object_ids(&f.dom), arrow_ids(&f.dom));
        SetFunctorJson {
            dom: FinCatJson::from_cat(&f.dom),
            sizes: f.sizes.iter().enumerate().map(|(x, &n)| (objs[x].clone(), n)).collect(),
            maps: f.maps.iter().enumerate().map(|(a, m)| (ids[a].clone(), m.clone())).collect(),
        }
    }

    pub fn to_functor(&self) -> Result<SetValuedFunctor, SchemaError> {
        let dom = Arc::new(self.dom.to_cat().map_err(|e| e.nest("/dom"))?);
        let (objs, ids) = (index(&object_ids(&dom), "/dom")?, index(&arrow_ids(&dom), "/dom")?);
        let mut sizes = vec![usize::MAX; dom.num_objects()];
        for (x, &n) in &self.sizes {
            sizes[lookup(&objs, x, &format!("/sizes/{x}"))?] = n;
        }
        let mut maps = vec![Vec::new(); dom.num_arrows()];
        let mut seen = vec![false; dom.num_arrows()];
        for (a, m) in &self.maps {
            let i = lookup(&ids, a, &format!("/maps/{a}"))?;
            maps[i] = m.clone();
            seen[i] = true;
        }
        if sizes.contains(&usize::MAX) || seen.contains(&false) {
            return Err(SchemaError::at("/sizes", "every object and arrow needs a value"));
        }
        SetValuedFunctor::new(dom, sizes, maps).map_err(|e| cat_error("/maps", e))
    }
}

fn index(names: &[String], pointer: &str) -> Result<HashMap<String, usize>, SchemaError> {
    let mut out = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if out.insert(n.clone(), i).is_some() {
            return Err(SchemaError::at(format!("{pointer}/{i}"), format!("duplicate id {n:?}")));
        }
    }
    Ok(out)
}

fn lookup(map: &HashMap<String, usize>, key: &str, pointer: &str) -> Result<usize, SchemaError> {
    map.get(key).copied().ok_or_else(|| SchemaError::at(pointer, format!("unknown id {key:?}")))
}

fn cat_error(pointer: &str, e: CatError) -> SchemaError {
    SchemaError::at(pointer, e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_round_trip() {
        let c = FinCat::free(3, &[(0, 1, "f".into()), (1, 2, "g".into()), (0, 2, "h".into())]).unwrap();
        let j = FinCatJson::from_cat(&c);
        let text = serde_json::to_string(&j).unwrap();
        let back: FinCatJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_cat().unwrap(), c);
    }

    #[test]
    fn functor_round_trip() {
        let c = Arc::new(FinCat::chain(1));
        let d = Arc::new(FinCat::chain(2));
        let f = FinFunctor::new(c, d.clone(), vec![0, 2], vec![d.id(0), d.hom(0, 2)[0], d.id(2)]).unwrap();
        assert_eq!(FinFunctorJson::from_functor(&f).to_functor().unwrap(), f);
    }

    #[test]
    fn set_functor_round_trip() {
        let c = Arc::new(FinCat::chain(1));
        let f = SetValuedFunctor::new(c, vec![2, 1], vec![vec![0, 1], vec![0, 0], vec![0]]).unwrap();
        assert_eq!(SetFunctorJson::from_functor(&f).to_functor().unwrap(), f);
    }

    #[test]
    fn unknown_object_is_located() {
        let mut j = FinCatJson::from_cat(&FinCat::chain(1));
        j.arrows[1].tgt = "7".into();
        match j.to_cat() {
            Err(SchemaError::Invalid { pointer, .. }) => assert_eq!(pointer, "/arrows/1/tgt"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
