//! JSON encoding of quivers: the object category `X` and the functor on
//! `X^op × X`, keyed by the object and arrow ids of that product.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Ambient, Quiver};
use crate::fincat::json::{FinCatJson, SchemaError, SetFunctorJson};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub objects: FinCatJson,
    pub sizes: BTreeMap<String, usize>,
    pub maps: BTreeMap<String, Vec<usize>>,
}

impl QuiverJson {
    pub fn from_quiver(q: &Quiver) -> Self {
        let body = SetFunctorJson::from_functor(&q.body);
        QuiverJson { objects: FinCatJson::from_cat(&q.amb.x), sizes: body.sizes, maps: body.maps }
    }

    pub fn to_quiver(&self) -> Result<Quiver, SchemaError> {
        let x = self.objects.to_cat().map_err(|e| e.nest("/objects"))?;
        self.to_quiver_over(&Ambient::new(std::sync::Arc::new(x)))
    }

    /// Decodes over a given ambient, which must carry the same objects.
    pub fn to_quiver_over(&self, amb: &std::sync::Arc<Ambient>) -> Result<Quiver, SchemaError> {
        if self.objects.to_cat().map_err(|e| e.nest("/objects"))? != *amb.x {
            return Err(SchemaError::at("/objects", "object category differs"));
        }
        let body = SetFunctorJson { dom: FinCatJson::from_cat(&amb.xx), sizes: self.sizes.clone(), maps: self.maps.clone() };
        let mut f = body.to_functor()?;
        f.dom = amb.xx.clone();
        Quiver::new(amb.clone(), f).map_err(|e| SchemaError::at("/maps", e.to_string()))
    }
}
