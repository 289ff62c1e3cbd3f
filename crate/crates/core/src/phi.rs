//! Textual class-function specs.
//!
//! | spec                  | meaning                                        |
//! |-----------------------|------------------------------------------------|
//! | `one`, `zero`         | constant function on the subgroup              |
//! | `delta:(1 2)`         | indicator of the subgroup class of `(1 2)`     |
//! | `indicator:<k>`       | indicator of subgroup class number `k`         |
//! | `sigma-phi:(1 2 3)`   | `Σ_{e|n} (n/c_e) δ_{σ^e}` on `⟨σ⟩`             |
//!
//! The subgroup defaults to the whole group. `sigma-phi` brings its own
//! subgroup `⟨σ⟩`; an explicitly chosen subgroup must then have the same
//! elements.

use std::sync::Arc;

use crate::catalog::FieldDescriptor;
use crate::classfn::{sigma_phi, ClassFunction};
use crate::error::Error;
use crate::group::Subgroup;
use crate::perm::Permutation;

pub fn parse_phi(
    spec: &str,
    entry: &FieldDescriptor,
    subgroup: Option<&Arc<Subgroup>>,
) -> Result<ClassFunction, Error> {
    let err = |msg: String| Error::PhiSpec(spec.to_string(), msg);
    let domain = subgroup.cloned().unwrap_or_else(|| Arc::clone(entry.whole()));
    let degree = entry.group().degree();
    let spec_t = spec.trim();
    let (kind, arg) = match spec_t.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a.trim())),
        None => (spec_t, None),
    };
    match (kind, arg) {
        ("one", None) => Ok(ClassFunction::one(domain)),
        ("zero", None) => Ok(ClassFunction::zero(domain)),
        ("delta", Some(a)) => {
            let h = Permutation::parse_cycles(a, degree).map_err(|e| err(e.to_string()))?;
            ClassFunction::delta_at(domain, &h).map_err(|e| err(e.to_string()))
        }
        ("indicator", Some(a)) => {
            let k: usize = a.parse().map_err(|_| err(format!("{:?} is not a class index", a)))?;
            ClassFunction::indicator(domain, k).map_err(|e| err(e.to_string()))
        }
        ("sigma-phi", Some(a)) => {
            let s = Permutation::parse_cycles(a, degree).map_err(|e| err(e.to_string()))?;
            let (h, phi) = sigma_phi(entry.group(), &s).map_err(|e| err(e.to_string()))?;
            if let Some(chosen) = subgroup {
                if !chosen.same_elements(&h) {
                    return Err(err(format!(
                        "subgroup of order {} is not <{}> (order {})",
                        chosen.order(),
                        s,
                        h.order()
                    )));
                }
            }
            Ok(phi)
        }
        _ => Err(err(
            "expected one, zero, delta:<perm>, indicator:<k> or sigma-phi:<perm>".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_catalog, find_entry};
    use crate::classfn::rational;

    #[test]
    fn parses_all_forms() {
        let cat = builtin_catalog();
        let e = find_entry(&cat, "s3-cbrt2").unwrap();
        let a3 = &e.subfield("quadratic").unwrap().subgroup;

        assert_eq!(parse_phi("one", e, None).unwrap().mean(), rational(1, 1));
        assert!(parse_phi("zero", e, Some(a3)).unwrap().is_zero());
        let d = parse_phi("delta:(1 2 3)", e, Some(a3)).unwrap();
        assert_eq!(d.mean(), rational(1, 3));
        let ind = parse_phi("indicator:1", e, None).unwrap();
        assert_eq!(ind.domain().order(), 6);
        let sp = parse_phi("sigma-phi:(1 2 3)", e, Some(a3)).unwrap();
        assert_eq!(sp.mean(), rational(1, 2));
        assert_eq!(parse_phi("sigma-phi:(1 2 3)", e, None).unwrap().domain().order(), 3);
    }

    #[test]
    fn rejects_bad_specs() {
        let cat = builtin_catalog();
        let e = find_entry(&cat, "s3-cbrt2").unwrap();
        let a3 = &e.subfield("quadratic").unwrap().subgroup;
        let root = &e.subfield("root-field").unwrap().subgroup;
        for bad in ["", "two", "delta", "delta:(1 4)", "indicator:x", "indicator:9", "one:3"] {
            assert!(matches!(parse_phi(bad, e, None), Err(Error::PhiSpec(..))), "{bad:?}");
        }
        assert!(parse_phi("delta:(1 2)", e, Some(a3)).is_err());
        assert!(parse_phi("sigma-phi:(1 2 3)", e, Some(root)).is_err());
    }
}
