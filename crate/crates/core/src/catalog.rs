//! Declarative catalog of Galois extensions `L/Q`.
//!
//! Each entry stores its Galois group explicitly, as permutations of the
//! roots of a defining polynomial, together with a finite set of excluded
//! primes and a rule for reading off the Frobenius class of a good prime.
//! Every stored claim that can be checked mechanically is checked at load.
//!
//! The document is JSON:
//!
//! ```json
//! { "entries": [ {
//!     "name": "s3-cbrt2",
//!     "poly": [-2, 0, 0, 1],
//!     "generators": ["(1 2 3)", "(1 2)"],
//!     "resolver": "cycle-type",
//!     "badPrimes": [2, 3],
//!     "subfields": [ {
//!         "name": "quadratic",
//!         "subgroupGenerators": ["(1 2 3)"],
//!         "subfieldPoly": [1, 1, 1],
//!         "extraBadPrimes": [3] } ] } ] }
//! ```

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;
use serde::Deserialize;

use crate::error::Error;
use crate::group::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
use crate::perm::Permutation;
use crate::splitting::{cofactor_after, IntPolynomial};

pub const BUILTIN_DOCUMENT: &str = include_str!("../catalog/builtin.json");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogDoc {
    entries: Vec<EntryDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct EntryDoc {
    name: String,
    poly: Vec<i64>,
    generators: Vec<String>,
    resolver: String,
    bad_primes: Vec<u64>,
    #[serde(default)]
    subfields: Vec<SubfieldDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct SubfieldDoc {
    name: String,
    subgroup_generators: Vec<String>,
    #[serde(default)]
    subfield_poly: Option<Vec<i64>>,
    #[serde(default)]
    extra_bad_primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolver {
    /// Frobenius class is the unique class with the factor-degree pattern as
    /// its cycle type.
    CycleType,
    /// `G ≅ (Z/n)^×` acting on the primitive n-th roots `ζ^k`, points ordered
    /// by `k`; Frobenius at `p` is `ζ ↦ ζ^p`.
    Cyclotomic(u64),
}

impl Resolver {
    fn parse(s: &str) -> Option<Resolver> {
        if s == "cycle-type" {
            return Some(Resolver::CycleType);
        }
        let n: u64 = s.strip_prefix("cyclotomic:")?.parse().ok()?;
        (n >= 3).then_some(Resolver::Cyclotomic(n))
    }
}

#[derive(Debug)]
pub struct SubfieldDescriptor {
    pub name: String,
    pub generators: Vec<Permutation>,
    pub poly: Option<IntPolynomial>,
    pub extra_bad_primes: Vec<u64>,
    pub subgroup: Arc<Subgroup>,
}

#[derive(Debug)]
pub struct FieldDescriptor {
    pub name: String,
    pub poly: IntPolynomial,
    pub generators: Vec<Permutation>,
    pub resolver: Resolver,
    pub declared_bad_primes: Vec<u64>,
    pub subfields: Vec<SubfieldDescriptor>,
    group: Arc<FiniteGroup>,
    whole: Arc<Subgroup>,
    bad_primes: Vec<u64>,
    by_cycle_type: HashMap<Vec<usize>, usize>,
    by_residue: Vec<Option<usize>>,
}

impl FieldDescriptor {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `G` as a subgroup of itself; class ids agree with `group()`.
    pub fn whole(&self) -> &Arc<Subgroup> {
        &self.whole
    }

    /// Every excluded prime: declared ones plus subfield extras, sorted.
    pub fn bad_primes(&self) -> &[u64] {
        &self.bad_primes
    }

    pub fn is_bad_prime(&self, p: u64) -> bool {
        self.bad_primes.binary_search(&p).is_ok()
    }

    pub fn subfield(&self, name: &str) -> Result<&SubfieldDescriptor, Error> {
        self.subfields
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSubfield {
                entry: self.name.clone(),
                subfield: name.to_string(),
            })
    }

    pub fn class_for_cycle_type(&self, ct: &[usize]) -> Option<usize> {
        self.by_cycle_type.get(ct).copied()
    }

    /// Class of `ζ ↦ ζ^r`; `r` must be a unit mod n.
    pub fn class_for_residue(&self, r: u64) -> usize {
        self.by_residue[r as usize].expect("residue is a unit mod n")
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn parse_perms(entry: &str, strs: &[String], degree: usize) -> Result<Vec<Permutation>, Error> {
    strs.iter()
        .map(|s| {
            Permutation::parse_cycles(s, degree).map_err(|e| Error::CatalogValidation {
                entry: entry.to_string(),
                check: format!("generator {:?}: {}", s, e),
            })
        })
        .collect()
}

fn build_entry(doc: EntryDoc) -> Result<FieldDescriptor, Error> {
    let name = doc.name.clone();
    let fail = |check: String| Error::CatalogValidation {
        entry: name.clone(),
        check,
    };

    let poly = IntPolynomial::new(doc.poly).map_err(|e| fail(e.to_string()))?;
    let resolver =
        Resolver::parse(&doc.resolver).ok_or_else(|| fail(format!("unknown resolver {:?}", doc.resolver)))?;
    let degree = poly.degree();
    let generators = parse_perms(&name, &doc.generators, degree)?;
    let group = Arc::new(
        FiniteGroup::generate(&generators, DEFAULT_ORDER_CAP).map_err(|e| fail(format!("group generation: {}", e)))?,
    );
    let whole = Arc::new(Subgroup::whole(&group));

    if let Some(&q) = doc.bad_primes.iter().find(|&&q| !is_prime(q)) {
        return Err(fail(format!("bad prime {} is not prime", q)));
    }

    let mut by_cycle_type = HashMap::new();
    let mut by_residue = Vec::new();
    match resolver {
        Resolver::CycleType => {
            let mut reached = vec![false; degree];
            for g in group.elements() {
                reached[g.apply(0)] = true;
            }
            if reached.iter().any(|r| !r) {
                return Err(fail("group is not transitive on the roots".into()));
            }
            for (c, cls) in group.classes().iter().enumerate() {
                let ct = group.cycle_type(cls.representative);
                if let Some(prev) = by_cycle_type.insert(ct.clone(), c) {
                    return Err(fail(format!(
                        "ambiguous cycle type {:?}: shared by classes of {} and {}",
                        ct,
                        group.class_representative(prev),
                        group.class_representative(c)
                    )));
                }
            }
        }
        Resolver::Cyclotomic(n) => {
            let units: Vec<u64> = (1..n).filter(|&k| num_integer::gcd(k, n) == 1).collect();
            if units.len() != degree {
                return Err(fail(format!(
                    "cyclotomic:{} needs {} points, polynomial has degree {}",
                    n,
                    units.len(),
                    degree
                )));
            }
            if group.order() != units.len() {
                return Err(fail(format!(
                    "group order {} differs from |(Z/{})^×| = {}",
                    group.order(),
                    n,
                    units.len()
                )));
            }
            by_residue = vec![None; n as usize];
            for &u in &units {
                let images = units
                    .iter()
                    .map(|&k| units.binary_search(&(k * u % n)).unwrap())
                    .collect();
                let perm = Permutation::from_images(images)?;
                let c = group
                    .class_of_perm(&perm)
                    .map_err(|_| fail(format!("multiplication by {} is not in the group", u)))?;
                by_residue[u as usize] = Some(c);
            }
        }
    }

    let disc = poly.discriminant();
    let rest = cofactor_after(&disc, &doc.bad_primes);
    if !rest.is_one() {
        return Err(fail(format!(
            "discriminant {} has prime factors outside badPrimes (cofactor {})",
            disc, rest
        )));
    }

    let mut bad_primes = doc.bad_primes.clone();
    let mut subfields = Vec::new();
    for sub in doc.subfields {
        let gens = parse_perms(&name, &sub.subgroup_generators, degree)?;
        let subgroup = Arc::new(
            Subgroup::generate(&group, &gens)
                .map_err(|e| fail(format!("subfield {}: {}", sub.name, e)))?,
        );
        if let Some(&q) = sub.extra_bad_primes.iter().find(|&&q| !is_prime(q)) {
            return Err(fail(format!("subfield {}: bad prime {} is not prime", sub.name, q)));
        }
        let sub_poly = match sub.subfield_poly {
            None => None,
            Some(c) => {
                let g = IntPolynomial::new(c).map_err(|e| fail(format!("subfield {}: {}", sub.name, e)))?;
                if g.degree() != subgroup.index() {
                    return Err(fail(format!(
                        "subfield {}: degree mismatch, polynomial degree {} but [G:H] = {}",
                        sub.name,
                        g.degree(),
                        subgroup.index()
                    )));
                }
                let covered: Vec<u64> = doc
                    .bad_primes
                    .iter()
                    .chain(&sub.extra_bad_primes)
                    .copied()
                    .collect();
                let d = g.discriminant();
                let rest = cofactor_after(&d, &covered);
                if !rest.is_one() {
                    return Err(fail(format!(
                        "subfield {}: discriminant {} has prime factors outside badPrimes (cofactor {})",
                        sub.name, d, rest
                    )));
                }
                Some(g)
            }
        };
        bad_primes.extend(&sub.extra_bad_primes);
        subfields.push(SubfieldDescriptor {
            name: sub.name,
            generators: gens,
            poly: sub_poly,
            extra_bad_primes: sub.extra_bad_primes,
            subgroup,
        });
    }
    for (i, s) in subfields.iter().enumerate() {
        if subfields[..i].iter().any(|t| t.name == s.name) {
            return Err(fail(format!("duplicate subfield name {:?}", s.name)));
        }
    }
    bad_primes.sort_unstable();
    bad_primes.dedup();

    Ok(FieldDescriptor {
        name: doc.name,
        poly,
        generators,
        resolver,
        declared_bad_primes: doc.bad_primes,
        subfields,
        group,
        whole,
        bad_primes,
        by_cycle_type,
        by_residue,
    })
}

/// Parses and validates a catalog document.
pub fn load_catalog(document: &str) -> Result<Vec<FieldDescriptor>, Error> {
    let doc: CatalogDoc = serde_json::from_str(document)?;
    let mut out: Vec<FieldDescriptor> = Vec::new();
    for entry in doc.entries {
        if out.iter().any(|e| e.name == entry.name) {
            return Err(Error::CatalogValidation {
                entry: entry.name,
                check: "duplicate entry name".into(),
            });
        }
        out.push(build_entry(entry)?);
    }
    Ok(out)
}

pub fn builtin_catalog() -> Vec<FieldDescriptor> {
    load_catalog(BUILTIN_DOCUMENT).expect("built-in catalog is valid")
}

pub fn find_entry<'a>(catalog: &'a [FieldDescriptor], name: &str) -> Result<&'a FieldDescriptor, Error> {
    catalog
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}
