//! Family patterns such as `K`, `K[n,1]` or `AT[J,1,left]` with parameter ranges.

use knotkit::families::FamilyDescriptor;
use std::collections::BTreeMap;

pub struct Row {
    pub params: Vec<(String, i64)>,
    pub descriptor: FamilyDescriptor,
}

fn canonical(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "J" => &["m"],
        "K" => &["n", "m"],
        "R" => &["m"],
        "AT" => &["J", "m", "variant", "n"],
        "AUG" => &["J", "m", "variant"],
        _ => return None,
    })
}

fn is_variable(arg: &str, slot: &str) -> bool {
    let fixed = arg.parse::<i64>().is_ok() || (slot == "variant" && ["left", "right", "L", "R"].contains(&arg)) || (slot == "J" && arg == "J");
    !fixed && arg.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) && arg.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_range(s: &str) -> Result<(String, Vec<i64>), String> {
    let bad = || format!("bad range {s:?}; expected name=a..b or name=a");
    let (name, spec) = s.split_once('=').ok_or_else(bad)?;
    let int = |x: &str| x.trim().parse::<i64>().map_err(|_| bad());
    let values = match spec.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (int(a)?, int(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s:?}"));
            }
            (a..=b).collect()
        }
        None => vec![int(spec)?],
    };
    Ok((name.trim().to_string(), values))
}

/// Expands a pattern into rows, varying the first variable slowest.
pub fn expand(pattern: &str, ranges: &[String]) -> Result<Vec<Row>, String> {
    let pattern = pattern.trim();
    let (name, args): (&str, Vec<&str>) = match pattern.split_once('[') {
        Some((n, rest)) => {
            let body = rest.strip_suffix(']').ok_or_else(|| format!("bad pattern {pattern:?}"))?;
            (n.trim(), body.split(',').map(str::trim).collect())
        }
        None => (pattern, Vec::new()),
    };
    let slots = canonical(name).ok_or_else(|| format!("unknown family {name:?}; expected J, K, R, AT or AUG"))?;
    if args.len() > slots.len() {
        return Err(format!("too many arguments in {pattern:?}"));
    }
    let mut args: Vec<String> = args.into_iter().map(String::from).collect();
    for &s in &slots[args.len()..] {
        args.push(match s {
            "J" => "J".into(),
            other => other.into(),
        });
    }
    let mut bound: BTreeMap<String, Vec<i64>> = BTreeMap::new();
    for r in ranges {
        let (k, v) = parse_range(r)?;
        if bound.insert(k.clone(), v).is_some() {
            return Err(format!("parameter {k} given twice"));
        }
    }
    let mut vars: Vec<String> = Vec::new();
    for (a, s) in args.iter().zip(slots) {
        if is_variable(a, s) && !vars.contains(a) {
            if *s == "variant" {
                return Err(format!("the variant must be left or right, found {a:?}"));
            }
            vars.push(a.clone());
        }
    }
    for v in &vars {
        if !bound.contains_key(v) {
            return Err(format!("no range given for parameter {v}"));
        }
    }
    if let Some(extra) = bound.keys().find(|k| !vars.contains(k)) {
        return Err(format!("parameter {extra} does not occur in {pattern:?}"));
    }
    let mut tuples: Vec<Vec<i64>> = vec![Vec::new()];
    for v in &vars {
        tuples = tuples.into_iter().flat_map(|t| bound[v].iter().map(move |&x| [t.clone(), vec![x]].concat())).collect();
    }
    tuples
        .into_iter()
        .map(|t| {
            let params: Vec<(String, i64)> = vars.iter().cloned().zip(t).collect();
            let filled: Vec<String> = args
                .iter()
                .map(|a| params.iter().find(|(k, _)| k == a).map_or_else(|| a.clone(), |(_, x)| x.to_string()))
                .collect();
            let text = format!("{name}[{}]", filled.join(","));
            let descriptor = text.parse().map_err(|e: knotkit::families::FamilyError| e.to_string())?;
            Ok(Row { params, descriptor })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(p: &str, r: &[&str]) -> Vec<String> {
        let r: Vec<String> = r.iter().map(|s| s.to_string()).collect();
        expand(p, &r).unwrap().iter().map(|r| r.descriptor.to_string()).collect()
    }

    #[test]
    fn expansion() {
        assert_eq!(names("K", &["n=1..2", "m=0..1"]), ["K[1,0]", "K[1,1]", "K[2,0]", "K[2,1]"]);
        assert_eq!(names("R", &["m=0..2"]), ["R[0]", "R[1]", "R[2]"]);
        assert_eq!(names("AT[J,1,left]", &["n=-1..1"]), ["AT[J,1,left,-1]", "AT[J,1,left,0]", "AT[J,1,left,1]"]);
        assert_eq!(names("K[k,k]", &["k=1..2"]), ["K[1,1]", "K[2,2]"]);
        assert_eq!(names("AUG[J,m,right]", &["m=1"]), ["AUG[J,1,right]"]);
    }

    #[test]
    fn errors() {
        assert!(expand("K", &["n=1..2".into()]).is_err());
        assert!(expand("Q", &[]).is_err());
        assert!(expand("R", &["m=0..2".into(), "n=1".into()]).is_err());
        assert!(expand("R", &["m=2..0".into()]).is_err());
        assert!(expand("AT[J,1]", &["n=0".into()]).is_err());
    }
}
