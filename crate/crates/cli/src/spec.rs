//! Parsing of group and representation specifications from the command
//! line: `Sn:<n>`, `Cyclic:<l>`, or explicit permutation generators as JSON;
//! representation shorthands (`sigma`, `2sigma`, `regular`) or a JSON tree
//! of `sum` / `dual` / `diagonal` / `permutation` / `trivial` nodes.

use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use galmass::groups::{ClassSystem, Perm, PermGroup, SnClasses, DEFAULT_GROUP_BOUND};
use galmass::qlaurent::Rat;
use galmass::reps::TameRep;

/// A parsed group: either the cycle-type model of `S_n` or an explicit
/// permutation group with its generating set.
pub enum GroupModel {
    Sn(Arc<SnClasses>),
    Perm { group: Arc<PermGroup>, generators: Vec<Perm> },
}

impl GroupModel {
    pub fn class_system(&self) -> Arc<dyn ClassSystem> {
        match self {
            GroupModel::Sn(m) => m.clone(),
            GroupModel::Perm { group, .. } => group.clone(),
        }
    }

    pub fn describe(&self) -> String {
        self.class_system().describe()
    }
}

pub fn parse_group(spec: &str) -> Result<GroupModel> {
    if let Some(n) = spec.strip_prefix("Sn:") {
        let n: u32 = n.parse().context("Sn:<n> needs an integer")?;
        return Ok(GroupModel::Sn(Arc::new(SnClasses::new(n)?)));
    }
    if let Some(l) = spec.strip_prefix("Cyclic:") {
        let l: usize = l.parse().context("Cyclic:<l> needs an integer")?;
        let group = PermGroup::cyclic(l, DEFAULT_GROUP_BOUND)?;
        let generators = vec![Perm::from_cycles(l, &[(0..l).collect()])?];
        return Ok(GroupModel::Perm { group: Arc::new(group), generators });
    }
    let v: Value = serde_json::from_str(spec)
        .map_err(|e| anyhow!("group spec must be Sn:<n>, Cyclic:<l>, or JSON: {e}"))?;
    let degree = v["degree"]
        .as_u64()
        .ok_or_else(|| anyhow!("group JSON needs a positive 'degree'"))? as usize;
    let gens_json = v["generators"]
        .as_array()
        .ok_or_else(|| anyhow!("group JSON needs a 'generators' array"))?;
    let mut generators = Vec::with_capacity(gens_json.len());
    for g in gens_json {
        generators.push(parse_perm(g, degree)?);
    }
    let group = PermGroup::from_generators(degree, generators.clone(), DEFAULT_GROUP_BOUND)?;
    Ok(GroupModel::Perm { group: Arc::new(group), generators })
}

/// Permutations are written as 1-based image lists.
fn parse_perm(v: &Value, degree: usize) -> Result<Perm> {
    let images = v
        .as_array()
        .ok_or_else(|| anyhow!("a permutation is a 1-based image list"))?;
    if images.len() != degree {
        bail!("permutation has {} images, expected {degree}", images.len());
    }
    let images: Vec<usize> = images
        .iter()
        .map(|x| {
            let i = x.as_u64().filter(|&i| i >= 1 && i <= degree as u64);
            i.map(|i| i as usize - 1)
                .ok_or_else(|| anyhow!("image entries must be in 1..={degree}"))
        })
        .collect::<Result<_>>()?;
    Ok(Perm::new(images)?)
}

pub fn parse_rep(spec: &str, model: &GroupModel) -> Result<TameRep> {
    match spec {
        "sigma" => return defining(model),
        "2sigma" => {
            let sigma = defining(model)?;
            return Ok(sigma.direct_sum(&sigma)?);
        }
        "regular" => return Ok(TameRep::regular_rep(&model.class_system())?),
        _ => {}
    }
    let v: Value = serde_json::from_str(spec).map_err(|e| {
        anyhow!("rep spec must be sigma, 2sigma, regular, or a JSON object: {e}")
    })?;
    rep_from_json(&v, model)
}

fn defining(model: &GroupModel) -> Result<TameRep> {
    Ok(match model {
        GroupModel::Sn(m) => TameRep::defining_rep(m)?,
        GroupModel::Perm { group, .. } => TameRep::natural_rep(group)?,
    })
}

fn rep_from_json(v: &Value, model: &GroupModel) -> Result<TameRep> {
    let kind = v["kind"]
        .as_str()
        .ok_or_else(|| anyhow!("rep JSON needs a 'kind' field"))?;
    match kind {
        "defining" | "sigma" => defining(model),
        "regular" => Ok(TameRep::regular_rep(&model.class_system())?),
        "trivial" => {
            let dim = v["dim"].as_u64().unwrap_or(1) as usize;
            Ok(TameRep::trivial_rep(&model.class_system(), dim)?)
        }
        "sum" => {
            let summands = v["summands"]
                .as_array()
                .filter(|a| !a.is_empty())
                .ok_or_else(|| anyhow!("'sum' needs a nonempty 'summands' array"))?;
            let mut acc = rep_from_json(&summands[0], model)?;
            for s in &summands[1..] {
                acc = acc.direct_sum(&rep_from_json(s, model)?)?;
            }
            Ok(acc)
        }
        "dual" => Ok(rep_from_json(&v["of"], model)?.dual()),
        "diagonal" => {
            let GroupModel::Perm { group, .. } = model else {
                bail!("'diagonal' needs an explicit (cyclic) group");
            };
            let exps = v["exponents"]
                .as_array()
                .ok_or_else(|| anyhow!("'diagonal' needs an 'exponents' array of [num, den]"))?;
            let exps: Vec<Rat> = exps
                .iter()
                .map(|pair| {
                    let (num, den) = (pair[0].as_i64(), pair[1].as_i64());
                    match (num, den) {
                        (Some(n), Some(d)) if d > 0 => Ok(Rat::new(n.into(), d.into())),
                        _ => Err(anyhow!("exponents are [num, den] pairs with den > 0")),
                    }
                })
                .collect::<Result<_>>()?;
            Ok(TameRep::diagonal_rep(group, &exps)?)
        }
        "permutation" => {
            let GroupModel::Perm { group, generators } = model else {
                bail!("'permutation' needs an explicit group; use sigma for Sn:<n>");
            };
            let images = v["images"]
                .as_array()
                .ok_or_else(|| anyhow!("'permutation' needs an 'images' array"))?;
            if images.len() != generators.len() {
                bail!(
                    "{} images given for {} group generators",
                    images.len(),
                    generators.len()
                );
            }
            let n = images[0]
                .as_array()
                .map(|a| a.len())
                .ok_or_else(|| anyhow!("images are 1-based image lists"))?;
            let pairs: Vec<(Perm, Perm)> = generators
                .iter()
                .zip(images)
                .map(|(g, img)| Ok((g.clone(), parse_perm(img, n)?)))
                .collect::<Result<_>>()?;
            Ok(TameRep::permutation_rep(group, &pairs)?)
        }
        other => bail!("unknown rep kind '{other}'"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_group_specs() {
        assert_eq!(parse_group("Sn:5").unwrap().describe(), "S5 (cycle types)");
        assert_eq!(parse_group("Cyclic:6").unwrap().describe(), "C6");
        let g = parse_group(r#"{"degree": 3, "generators": [[2,1,3],[2,3,1]]}"#).unwrap();
        assert_eq!(g.class_system().order(), 6);
        assert!(parse_group("Sn:abc").is_err());
        assert!(parse_group(r#"{"degree": 3, "generators": [[1,1,3]]}"#).is_err());
    }

    #[test]
    fn parse_rep_specs() {
        let sn = parse_group("Sn:3").unwrap();
        assert_eq!(parse_rep("sigma", &sn).unwrap().dim(), 3);
        assert_eq!(parse_rep("2sigma", &sn).unwrap().dim(), 6);
        assert_eq!(parse_rep("regular", &sn).unwrap().dim(), 6);
        let c3 = parse_group("Cyclic:3").unwrap();
        let diag = parse_rep(r#"{"kind":"diagonal","exponents":[[1,3],[1,3]]}"#, &c3).unwrap();
        assert_eq!(diag.dim(), 2);
        let sum = parse_rep(
            r#"{"kind":"sum","summands":[{"kind":"sigma"},{"kind":"dual","of":{"kind":"sigma"}}]}"#,
            &c3,
        )
        .unwrap();
        assert!(sum.is_balanced());
        assert!(parse_rep(r#"{"kind":"diagonal","exponents":[[1,3]]}"#, &sn).is_err());
        assert!(parse_rep("nonsense", &sn).is_err());
    }
}
