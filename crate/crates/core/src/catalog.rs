//! Built-in algebras: three parameterized families and three
//! characteristically nilpotent algebras loaded from data files.
//!
//! Every entry carries documented invariants that are recomputed when the
//! entry is loaded; a mismatch is an error, never a silent pass.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::derivations::is_characteristically_nilpotent;
use crate::error::CatalogError;
use crate::format::parse_algebra;
use crate::liealg::{self, SparseBracket, StructureConstants};
use crate::malcev::lattice_closure_check;

/// Invariants an entry promises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub rank: usize,
    pub class: usize,
    pub abelianization: usize,
    pub charnil: bool,
    pub lattice_closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Abelian,
    HeisenbergLattice,
    Filiform,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Family(Family),
    DataFile(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    /// `None` for data entries; the parameter shown in listings otherwise.
    pub param: Option<usize>,
    pub source: Source,
    pub expected: Expected,
    /// Data file present.
    pub available: bool,
    pub summary: &'static str,
}

impl CatalogEntry {
    pub fn label(&self) -> String {
        match self.param {
            Some(p) => format!("{}({p})", self.name),
            None => self.name.clone(),
        }
    }
}

pub const FAMILIES: [&str; 3] = ["abelian", "heisenberg_lattice", "filiform"];
pub const DATA_ENTRIES: [&str; 3] = ["cn7", "cn8", "cn9"];

/// Parameters used in listings.
const LISTED_PARAMS: [usize; 3] = [3, 1, 4];

fn data_expected(name: &str) -> Expected {
    let (rank, class, abelianization) = match name {
        "cn7" => (7, 6, 2),
        "cn8" => (8, 3, 4),
        "cn9" => (9, 6, 2),
        _ => unreachable!("not a data entry"),
    };
    Expected {
        rank,
        class,
        abelianization,
        charnil: true,
        lattice_closed: true,
    }
}

fn family_expected(family: Family, p: usize) -> Expected {
    match family {
        Family::Abelian => Expected {
            rank: p,
            class: 1,
            abelianization: p,
            charnil: false,
            lattice_closed: true,
        },
        Family::HeisenbergLattice => Expected {
            rank: 2 * p + 1,
            class: 2,
            abelianization: 2 * p,
            charnil: false,
            lattice_closed: true,
        },
        Family::Filiform => Expected {
            rank: p,
            class: p - 1,
            abelianization: 2,
            charnil: false,
            lattice_closed: false,
        },
    }
}

fn family_of(name: &str) -> Option<Family> {
    match name {
        "abelian" => Some(Family::Abelian),
        "heisenberg_lattice" => Some(Family::HeisenbergLattice),
        "filiform" => Some(Family::Filiform),
        _ => None,
    }
}

/// `abelian(n)`, n >= 1.
pub fn abelian(n: usize) -> StructureConstants {
    liealg::abelian(n).with_name(format!("abelian({n})"))
}

/// `heisenberg_lattice(k)`: `[e_{2i-1}, e_{2i}] = 2 e_{2k+1}`, k >= 1.
pub fn heisenberg_lattice(k: usize) -> StructureConstants {
    let n = 2 * k + 1;
    let entries: Vec<OwnedBracket> = (1..=k).map(|i| (2 * i - 1, 2 * i, vec![(n, 2)])).collect();
    sparse(n, &entries).with_name(format!("heisenberg_lattice({k})"))
}

/// `filiform(n)`: `[e1, e_i] = e_{i+1}` for `2 <= i <= n-1`, n >= 3.
pub fn filiform(n: usize) -> StructureConstants {
    let entries: Vec<OwnedBracket> = (2..n).map(|i| (1, i, vec![(i + 1, 1)])).collect();
    sparse(n, &entries).with_name(format!("filiform({n})"))
}

type OwnedBracket = (usize, usize, Vec<(usize, i64)>);

fn sparse(n: usize, entries: &[OwnedBracket]) -> StructureConstants {
    let refs: Vec<SparseBracket> = entries.iter().map(|(i, j, v)| (*i, *j, v.as_slice())).collect();
    StructureConstants::from_sparse(n, &refs).expect("family tables are well formed")
}

fn check_params(name: &str, family: Family, p: Option<usize>) -> Result<usize, CatalogError> {
    let bad = |reason: &str| CatalogError::Params {
        name: name.to_owned(),
        reason: reason.to_owned(),
    };
    let p = p.ok_or_else(|| bad("a parameter is required"))?;
    match family {
        Family::Abelian if p < 1 => Err(bad("abelian(n) needs n >= 1")),
        Family::HeisenbergLattice if p < 1 => Err(bad("heisenberg_lattice(k) needs k >= 1")),
        Family::Filiform if p < 3 => Err(bad("filiform(n) needs n >= 3")),
        _ => Ok(p),
    }
}

/// Splits `name(p)` into name and parameter.
pub fn parse_reference(text: &str) -> Result<(String, Option<usize>), CatalogError> {
    let text = text.trim();
    let Some(open) = text.find('(') else {
        return Ok((text.to_owned(), None));
    };
    let name = text[..open].trim().to_owned();
    let inner = text[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| CatalogError::Params {
            name: name.clone(),
            reason: "missing `)`".to_owned(),
        })?
        .trim();
    let p = inner.parse::<usize>().map_err(|_| CatalogError::Params {
        name: name.clone(),
        reason: format!("`{inner}` is not a nonnegative integer"),
    })?;
    Ok((name, Some(p)))
}

/// Recomputes the documented invariants; returns the first mismatch.
pub fn revalidate(sc: &StructureConstants, expected: &Expected) -> Result<(), String> {
    let report = liealg::validate(sc);
    if !report.accepted() {
        return Err(match report.jacobi_failures.first() {
            Some(f) => format!("Jacobi identity fails on {:?}", f.triple),
            None => "not nilpotent".to_owned(),
        });
    }
    let inv = liealg::invariant_report(sc).map_err(|e| e.to_string())?;
    let check = |what: &str, want: usize, got: usize| {
        if want == got {
            Ok(())
        } else {
            Err(format!("{what} is {got}, documented {want}"))
        }
    };
    check("rank", expected.rank, inv.rank)?;
    check("class", expected.class, inv.class)?;
    check(
        "abelianization dimension",
        expected.abelianization,
        inv.abelianization_dim,
    )?;
    let charnil = is_characteristically_nilpotent(sc).map_err(|e| e.to_string())?.verdict;
    if charnil != expected.charnil {
        return Err(format!(
            "characteristic nilpotency is {charnil}, documented {}",
            expected.charnil
        ));
    }
    let closed = lattice_closure_check(sc).closed;
    if closed != expected.lattice_closed {
        return Err(format!(
            "lattice closure is {closed}, documented {}",
            expected.lattice_closed
        ));
    }
    Ok(())
}

/// Catalog rooted at a data directory. Loaded entries are cached.
pub struct Catalog {
    data_dir: PathBuf,
    cache: Mutex<HashMap<String, StructureConstants>>,
}

impl fmt::Debug for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Catalog").field("data_dir", &self.data_dir).finish()
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::new()
    }
}

impl Catalog {
    /// Uses the data directory shipped with the crate.
    pub fn new() -> Self {
        Catalog::with_data_dir(default_data_dir())
    }

    pub fn with_data_dir(dir: impl Into<PathBuf>) -> Self {
        Catalog {
            data_dir: dir.into(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn data_dir(&self) -> &Path {
        &self.data_dir
    }

    pub fn data_path(&self, name: &str) -> PathBuf {
        self.data_dir.join(format!("{name}.lie"))
    }

    /// Whether the data file of `name` exists. Families are always present.
    pub fn is_available(&self, name: &str) -> bool {
        !DATA_ENTRIES.contains(&name) || self.data_path(name).is_file()
    }

    /// Three families at their listing parameter, then the data entries.
    pub fn list(&self) -> Vec<CatalogEntry> {
        let summaries = ["zero brackets", "[e_{2i-1},e_{2i}] = 2 e_{2k+1}", "[e1,e_i] = e_{i+1}"];
        let mut out = Vec::new();
        for ((name, p), summary) in FAMILIES.iter().zip(LISTED_PARAMS).zip(summaries) {
            let family = family_of(name).expect("family name");
            out.push(CatalogEntry {
                name: (*name).to_owned(),
                param: Some(p),
                source: Source::Family(family),
                expected: family_expected(family, p),
                available: true,
                summary,
            });
        }
        for name in DATA_ENTRIES {
            let path = self.data_path(name);
            out.push(CatalogEntry {
                name: name.to_owned(),
                param: None,
                available: path.is_file(),
                source: Source::DataFile(path),
                expected: data_expected(name),
                summary: "characteristically nilpotent",
            });
        }
        out
    }

    pub fn expected(&self, name: &str, param: Option<usize>) -> Result<Expected, CatalogError> {
        if let Some(family) = family_of(name) {
            let p = check_params(name, family, param)?;
            return Ok(family_expected(family, p));
        }
        if DATA_ENTRIES.contains(&name) {
            return Ok(data_expected(name));
        }
        Err(CatalogError::Unknown(name.to_owned()))
    }

    /// Builds or loads an entry and checks its documented invariants.
    pub fn get(&self, name: &str, param: Option<usize>) -> Result<StructureConstants, CatalogError> {
        let expected = self.expected(name, param)?;
        let key = match param {
            Some(p) if family_of(name).is_some() => format!("{name}({p})"),
            _ => name.to_owned(),
        };
        if let Some(sc) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(sc.clone());
        }
        let sc = match family_of(name) {
            Some(Family::Abelian) => abelian(expected.rank),
            Some(Family::HeisenbergLattice) => heisenberg_lattice(expected.abelianization / 2),
            Some(Family::Filiform) => filiform(expected.rank),
            None => {
                if param.is_some() {
                    return Err(CatalogError::Params {
                        name: name.to_owned(),
                        reason: "takes no parameter".to_owned(),
                    });
                }
                self.load(name)?
            }
        };
        revalidate(&sc, &expected).map_err(|reason| CatalogError::Stale {
            name: key.clone(),
            reason,
        })?;
        self.cache.lock().expect("cache lock").insert(key, sc.clone());
        Ok(sc)
    }

    /// Accepts `name` or `name(p)`.
    pub fn get_reference(&self, text: &str) -> Result<StructureConstants, CatalogError> {
        let (name, p) = parse_reference(text)?;
        self.get(&name, p)
    }

    fn load(&self, name: &str) -> Result<StructureConstants, CatalogError> {
        let path = self.data_path(name);
        let text = std::fs::read_to_string(&path).map_err(|_| CatalogError::Absent(name.to_owned()))?;
        let sc = parse_algebra(&text).map_err(|source| CatalogError::Parse {
            name: name.to_owned(),
            source,
        })?;
        Ok(match sc.name() {
            Some(_) => sc,
            None => sc.with_name(name),
        })
    }
}

/// `data/` next to this crate's manifest.
pub fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        let c = Catalog::new();
        let a = c.get("abelian", Some(3)).unwrap();
        assert_eq!(a.dim(), 3);
        let h = c.get("heisenberg_lattice", Some(1)).unwrap();
        assert_eq!(h.basis_bracket(0, 1), crate::exactlin::int_vec(&[0, 0, 2]));
        let f = c.get("filiform", Some(5)).unwrap();
        assert_eq!(liealg::lower_central_series(&f).unwrap().class, 4);
    }

    #[test]
    fn bad_requests() {
        let c = Catalog::new();
        assert!(matches!(c.get("filiform", Some(2)), Err(CatalogError::Params { .. })));
        assert!(matches!(c.get("abelian", None), Err(CatalogError::Params { .. })));
        assert!(matches!(c.get("nope", None), Err(CatalogError::Unknown(_))));
        assert!(matches!(c.get("cn7", Some(1)), Err(CatalogError::Params { .. })));
    }

    #[test]
    fn references() {
        assert_eq!(
            parse_reference("filiform(6)").unwrap(),
            ("filiform".to_owned(), Some(6))
        );
        assert_eq!(parse_reference("cn7").unwrap(), ("cn7".to_owned(), None));
        assert!(parse_reference("abelian(x)").is_err());
        assert!(parse_reference("abelian(3").is_err());
    }

    #[test]
    fn missing_data_dir_marks_absent() {
        let c = Catalog::with_data_dir("/nonexistent/catalog");
        assert!(!c.is_available("cn7"));
        assert_eq!(c.get("cn7", None), Err(CatalogError::Absent("cn7".to_owned())));
        let listing = c.list();
        assert_eq!(listing.len(), 6);
        assert!(listing.iter().filter(|e| !e.available).count() == 3);
    }

    #[test]
    fn stale_documentation_is_caught() {
        let mut e = family_expected(Family::Filiform, 4);
        e.class = 2;
        assert!(revalidate(&filiform(4), &e).unwrap_err().contains("class"));
    }
}
