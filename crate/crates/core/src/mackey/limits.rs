//! Levelwise finite limits and colimits of Mackey functors.

use std::sync::{Arc, OnceLock};

use super::{MackeyError, MackeyFunctor, MackeyMorphism, MackeySource};
use crate::zmod::{finite_colimit, finite_limit, AbGrp, AbHom, Colimit, Diagram, Limit};

#[derive(Clone, Debug, Default)]
pub struct MackeyDiagram {
    pub objects: Vec<MackeyFunctor>,
    pub edges: Vec<(usize, usize, MackeyMorphism)>,
}

impl MackeyDiagram {
    pub fn validate(&self) -> Result<(), MackeyError> {
        let first = self.objects.first().ok_or_else(|| MackeyError::Diagram("empty diagram".into()))?;
        for o in &self.objects {
            if o.burnside() != first.burnside() {
                return Err(MackeyError::Diagram("objects over different groups".into()));
            }
        }
        for (k, (s, t, f)) in self.edges.iter().enumerate() {
            if *s >= self.objects.len() || *t >= self.objects.len() {
                return Err(MackeyError::Diagram(format!("edge {k} references a missing object")));
            }
            let (os, ot) = (&self.objects[*s], &self.objects[*t]);
            let ok = (0..os.n_levels()).all(|h| {
                f.components[h].mat.shape() == (ot.level(h).n_gens(), os.level(h).n_gens())
            });
            if !ok {
                return Err(MackeyError::Diagram(format!("edge {k} does not match its endpoints")));
            }
        }
        Ok(())
    }

    fn at_level(&self, h: usize) -> Diagram {
        Diagram {
            objects: self.objects.iter().map(|o| o.level(h).clone()).collect(),
            edges: self.edges.iter().map(|(s, t, f)| (*s, *t, f.components[h].clone())).collect(),
        }
    }
}

struct ColimData {
    diag: MackeyDiagram,
    levels: Vec<OnceLock<Colimit>>,
}

impl ColimData {
    fn level(&self, h: usize) -> &Colimit {
        self.levels[h].get_or_init(|| finite_colimit(&self.diag.at_level(h)).expect("validated diagram"))
    }
}

struct ColimSource(Arc<ColimData>);

impl MackeySource for ColimSource {
    fn level(&self, h: usize) -> AbGrp {
        self.0.level(h).obj.clone()
    }

    fn action(&self, h: usize, k: usize, idx: usize) -> AbHom {
        let ck = self.0.level(k);
        let cocone: Vec<AbHom> =
            self.0.diag.objects.iter().enumerate().map(|(o, m)| ck.legs[o].compose(&m.action(h, k, idx))).collect();
        self.0.level(h).induced(&ck.obj, &cocone)
    }
}

pub struct MackeyColimit {
    pub obj: MackeyFunctor,
    pub legs: Vec<MackeyMorphism>,
    data: Arc<ColimData>,
}

impl MackeyColimit {
    /// The map out of the colimit induced by a cocone.
    pub fn induced(&self, target: &MackeyFunctor, cocone: &[MackeyMorphism]) -> MackeyMorphism {
        let cs = (0..self.obj.n_levels())
            .map(|h| {
                let parts: Vec<AbHom> = cocone.iter().map(|c| c.components[h].clone()).collect();
                self.data.level(h).induced(target.level(h), &parts)
            })
            .collect();
        MackeyMorphism { src: self.obj.clone(), dst: target.clone(), components: cs }
    }
}

pub fn mackey_colimit(d: &MackeyDiagram) -> Result<MackeyColimit, MackeyError> {
    d.validate()?;
    let b = d.objects[0].burnside().clone();
    let n = b.n_orbits();
    let data = Arc::new(ColimData { diag: d.clone(), levels: (0..n).map(|_| OnceLock::new()).collect() });
    let obj = MackeyFunctor::new(&b, "colim", ColimSource(data.clone()));
    let legs = d
        .objects
        .iter()
        .enumerate()
        .map(|(o, m)| {
            let cs = (0..n).map(|h| data.level(h).legs[o].retyped(m.level(h), obj.level(h))).collect();
            MackeyMorphism { src: m.clone(), dst: obj.clone(), components: cs }
        })
        .collect();
    Ok(MackeyColimit { obj, legs, data })
}

struct LimData {
    diag: MackeyDiagram,
    levels: Vec<OnceLock<Limit>>,
}

impl LimData {
    fn level(&self, h: usize) -> &Limit {
        self.levels[h].get_or_init(|| finite_limit(&self.diag.at_level(h)).expect("validated diagram"))
    }
}

struct LimSource(Arc<LimData>);

impl MackeySource for LimSource {
    fn level(&self, h: usize) -> AbGrp {
        self.0.level(h).obj.clone()
    }

    fn action(&self, h: usize, k: usize, idx: usize) -> AbHom {
        let lh = self.0.level(h);
        let cone: Vec<AbHom> =
            self.0.diag.objects.iter().enumerate().map(|(o, m)| m.action(h, k, idx).compose(&lh.legs[o])).collect();
        self.0.level(k).induced(&lh.obj, &cone).expect("cone over the diagram")
    }
}

pub struct MackeyLimit {
    pub obj: MackeyFunctor,
    pub legs: Vec<MackeyMorphism>,
    data: Arc<LimData>,
}

impl MackeyLimit {
    /// The map into the limit induced by a cone; `None` if it is not a cone.
    pub fn induced(&self, source: &MackeyFunctor, cone: &[MackeyMorphism]) -> Option<MackeyMorphism> {
        let mut cs = Vec::new();
        for h in 0..self.obj.n_levels() {
            let parts: Vec<AbHom> = cone.iter().map(|c| c.components[h].clone()).collect();
            cs.push(self.data.level(h).induced(source.level(h), &parts)?.retyped(source.level(h), self.obj.level(h)));
        }
        Some(MackeyMorphism { src: source.clone(), dst: self.obj.clone(), components: cs })
    }
}

pub fn mackey_limit(d: &MackeyDiagram) -> Result<MackeyLimit, MackeyError> {
    d.validate()?;
    let b = d.objects[0].burnside().clone();
    let n = b.n_orbits();
    let data = Arc::new(LimData { diag: d.clone(), levels: (0..n).map(|_| OnceLock::new()).collect() });
    let obj = MackeyFunctor::new(&b, "lim", LimSource(data.clone()));
    let legs = d
        .objects
        .iter()
        .enumerate()
        .map(|(o, m)| {
            let cs = (0..n).map(|h| data.level(h).legs[o].retyped(obj.level(h), m.level(h))).collect();
            MackeyMorphism { src: obj.clone(), dst: m.clone(), components: cs }
        })
        .collect();
    Ok(MackeyLimit { obj, legs, data })
}
