//! On-disk subgroup lattices keyed by the content hash of the element table.
//!
//! File layout (one `<hash>.lattice` file per group):
//!
//! ```text
//! diffgraph-lattice 1
//! group <content hash>
//! order <n>
//! subgroups <count>
//! <order> <normal> <maximal> <generators|-> <member words in hex>
//! ...
//! checksum <sha256 of every preceding byte>
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use sha2::{Digest, Sha256};

use crate::bitset::Bitset;
use crate::harness::LatticeSource;
use crate::lattice::{all_subgroups, LatticeError, Subgroup, SubgroupLattice};
use crate::perm::{Elem, FiniteGroup};

pub const CACHE_FORMAT: &str = "diffgraph-lattice 1";

pub struct LatticeCache {
    dir: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
    warnings: Mutex<Vec<String>>,
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn encode(lat: &SubgroupLattice) -> String {
    let g = lat.group();
    let mut body = format!(
        "{CACHE_FORMAT}\ngroup {}\norder {}\nsubgroups {}\n",
        g.content_hash(),
        g.order(),
        lat.len()
    );
    for (id, h) in lat.subgroups().iter().enumerate() {
        let gens = if h.generators.is_empty() {
            "-".to_string()
        } else {
            h.generators.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        let words: Vec<String> = h.members.words().iter().map(|w| format!("{w:x}")).collect();
        body += &format!(
            "{} {} {} {} {}\n",
            h.order,
            u8::from(lat.is_normal(id)),
            u8::from(lat.is_maximal(id)),
            gens,
            words.join(" ")
        );
    }
    let sum = hex_digest(body.as_bytes());
    body + &format!("checksum {sum}\n")
}

fn field<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str, String> {
    line.and_then(|l| l.strip_prefix(key))
        .and_then(|l| l.strip_prefix(' '))
        .ok_or_else(|| format!("missing {key:?} line"))
}

fn decode(text: &str, group: Arc<FiniteGroup>) -> Result<SubgroupLattice, String> {
    let body_end = text.rfind("checksum ").ok_or("missing checksum")?;
    let (body, tail) = text.split_at(body_end);
    let stored = tail.trim_start_matches("checksum ").trim();
    if stored != hex_digest(body.as_bytes()) {
        return Err("checksum mismatch".into());
    }
    let mut lines = body.lines();
    if lines.next() != Some(CACHE_FORMAT) {
        return Err("unknown format header".into());
    }
    if field(lines.next(), "group")? != group.content_hash() {
        return Err("group hash does not match".into());
    }
    let n: usize = field(lines.next(), "order")?.parse().map_err(|_| "bad order")?;
    if n != group.order() {
        return Err("group order does not match".into());
    }
    let count: usize = field(lines.next(), "subgroups")?.parse().map_err(|_| "bad count")?;
    let mut subgroups = Vec::with_capacity(count);
    let mut flags = Vec::with_capacity(count);
    for line in lines.by_ref().take(count) {
        let mut parts = line.split(' ');
        let mut next = || parts.next().ok_or_else(|| "short subgroup line".to_string());
        let order: usize = next()?.parse().map_err(|_| "bad subgroup order")?;
        let normal = next()? == "1";
        let maximal = next()? == "1";
        let gens_text = next()?;
        let generators: Vec<Elem> = if gens_text == "-" {
            Vec::new()
        } else {
            gens_text
                .split(',')
                .map(|x| x.parse().map_err(|_| "bad generator".to_string()))
                .collect::<Result<_, _>>()?
        };
        let words: Vec<u64> = parts
            .map(|w| u64::from_str_radix(w, 16).map_err(|_| "bad member word".to_string()))
            .collect::<Result<_, _>>()?;
        let members = Bitset::from_words(n, words).ok_or("bad member bitset")?;
        if members.count() != order {
            return Err("member count disagrees with order".into());
        }
        subgroups.push(Subgroup {
            members,
            order,
            generators,
        });
        flags.push((normal, maximal));
    }
    if subgroups.len() != count || lines.next().is_some() {
        return Err("subgroup count mismatch".into());
    }
    let lat = SubgroupLattice::from_subgroups(group, subgroups).map_err(|e| e.to_string())?;
    for (id, &(normal, maximal)) in flags.iter().enumerate() {
        if lat.is_normal(id) != normal || lat.is_maximal(id) != maximal {
            return Err(format!("stored flags of subgroup {id} disagree with the lattice"));
        }
    }
    Ok(lat)
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(LatticeCache {
            dir,
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            warnings: Mutex::new(Vec::new()),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, group: &FiniteGroup) -> PathBuf {
        self.dir.join(format!("{}.lattice", group.content_hash()))
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    /// Drains the warnings collected so far.
    pub fn take_warnings(&self) -> Vec<String> {
        std::mem::take(&mut *self.warnings.lock().unwrap())
    }

    fn warn(&self, msg: String) {
        self.warnings.lock().unwrap().push(msg);
    }

    fn store(&self, lat: &SubgroupLattice, path: &Path) {
        static SEQ: AtomicUsize = AtomicUsize::new(0);
        let tmp = path.with_extension(format!(
            "tmp{}-{}",
            std::process::id(),
            SEQ.fetch_add(1, Ordering::Relaxed)
        ));
        let result = fs::write(&tmp, encode(lat)).and_then(|_| fs::rename(&tmp, path));
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            self.warn(format!("could not write cache entry {}: {e}", path.display()));
        }
    }
}

impl LatticeSource for LatticeCache {
    fn lattice(&self, group: Arc<FiniteGroup>) -> Result<SubgroupLattice, LatticeError> {
        let path = self.path_for(&group);
        if let Ok(text) = fs::read_to_string(&path) {
            match decode(&text, group.clone()) {
                Ok(lat) => {
                    self.hits.fetch_add(1, Ordering::Relaxed);
                    return Ok(lat);
                }
                Err(why) => self.warn(format!(
                    "discarding cache entry {}: {why}; recomputing",
                    path.display()
                )),
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let lat = all_subgroups(group)?;
        self.store(&lat, &path);
        Ok(lat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{parse_group_spec, realize, ActionRegistry, DEFAULT_ORDER_CAP};

    fn group(s: &str) -> Arc<FiniteGroup> {
        Arc::new(realize(&parse_group_spec(s).unwrap(), &ActionRegistry::new(), DEFAULT_ORDER_CAP).unwrap())
    }

    #[test]
    fn encode_decode_roundtrip() {
        for s in ["symmetric(4)", "dicyclic(2)", "cyclic(1)", "elem_abelian(2, 3)"] {
            let g = group(s);
            let lat = all_subgroups(g.clone()).unwrap();
            let back = decode(&encode(&lat), g).unwrap();
            assert!(back == lat, "{s}");
        }
    }

    #[test]
    fn decode_rejects_tampering() {
        let g = group("symmetric(3)");
        let lat = all_subgroups(g.clone()).unwrap();
        let text = encode(&lat);
        let tampered = text.replacen("\n2 0 ", "\n2 1 ", 1);
        assert_ne!(tampered, text);
        assert!(decode(&tampered, g.clone()).unwrap_err().contains("checksum"));
        let other = group("cyclic(6)");
        assert!(decode(&text, other).is_err());
        assert!(decode("", g).is_err());
    }
}
