//! Directory-backed store for student-built levels.
//!
//! Layout: `<root>/<id>.level.json`, one document per level. The bundled
//! pack is always listed first and cannot be overwritten. Saved levels get a
//! fresh `custom-N` id.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use thiserror::Error;

use super::{bundled_pack, check_solvable, level_from_json, level_to_document, validate_level, LevelSummary};
use crate::diag::{Code, Diagnostic};
use crate::model::Level;

const SUFFIX: &str = ".level.json";
const CUSTOM_PREFIX: &str = "custom-";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("the level is not valid")]
    Invalid(Vec<Diagnostic>),
    #[error("the level cannot be solved")]
    Unsolvable,
    #[error("no level with id {0:?}")]
    NotFound(String),
    #[error("level store I/O failed: {0}")]
    Io(#[from] io::Error),
}

impl StoreError {
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        match self {
            StoreError::Invalid(diags) => diags.clone(),
            StoreError::Unsolvable => vec![Diagnostic::new(
                Code::EUnsolvable,
                "this maze can't be solved: there is no path from the start to the goal",
            )],
            StoreError::NotFound(id) => vec![Diagnostic::new(Code::ENotFound, format!("no level with id {id:?}"))],
            StoreError::Io(e) => vec![Diagnostic::new(Code::EIo, e.to_string())],
        }
    }
}

#[derive(Debug)]
pub struct LevelStore {
    root: PathBuf,
    writer: Mutex<()>,
}

fn id_is_safe(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
}

fn custom_number(id: &str) -> Option<u64> {
    id.strip_prefix(CUSTOM_PREFIX)?.parse().ok()
}

impl LevelStore {
    /// Opens (creating if needed) a store rooted at `root`.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(LevelStore {
            root,
            writer: Mutex::new(()),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path_of(&self, id: &str) -> PathBuf {
        self.root.join(format!("{id}{SUFFIX}"))
    }

    fn stored_ids(&self) -> Result<Vec<String>, StoreError> {
        let mut ids = Vec::new();
        for entry in fs::read_dir(&self.root)? {
            let name = entry?.file_name();
            let Some(name) = name.to_str() else { continue };
            if let Some(id) = name.strip_suffix(SUFFIX) {
                if id_is_safe(id) {
                    ids.push(id.to_owned());
                }
            }
        }
        // custom-2 before custom-10
        ids.sort_by(|a, b| (custom_number(a), a).cmp(&(custom_number(b), b)));
        Ok(ids)
    }

    /// Validates, checks solvability and writes the level under a fresh id.
    /// The write is atomic: a temporary file is renamed into place.
    pub fn save(&self, level: &Level) -> Result<String, StoreError> {
        let diags = validate_level(level);
        if !diags.is_empty() {
            return Err(StoreError::Invalid(diags));
        }
        if !check_solvable(level).reachable {
            return Err(StoreError::Unsolvable);
        }

        let _guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        let next = self
            .stored_ids()?
            .iter()
            .filter_map(|id| custom_number(id))
            .max()
            .unwrap_or(0)
            + 1;
        let id = format!("{CUSTOM_PREFIX}{next}");
        let mut stored = level.clone();
        stored.id = id.clone();

        let tmp = self.root.join(format!(".{id}{SUFFIX}.tmp"));
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(level_to_document(&stored).as_bytes())?;
            file.sync_all()?;
        }
        fs::rename(&tmp, self.path_of(&id))?;
        Ok(id)
    }

    pub fn load(&self, id: &str) -> Result<Level, StoreError> {
        if let Some(level) = bundled_pack().iter().find(|l| l.id == id) {
            return Ok(level.clone());
        }
        if !id_is_safe(id) {
            return Err(StoreError::NotFound(id.to_owned()));
        }
        let text = match fs::read_to_string(self.path_of(id)) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Err(StoreError::NotFound(id.to_owned())),
            Err(e) => return Err(e.into()),
        };
        level_from_json(&text).map_err(StoreError::Invalid)
    }

    /// Summaries of the bundled pack followed by every stored level.
    /// Stored documents that no longer parse are skipped.
    pub fn list(&self) -> Result<Vec<LevelSummary>, StoreError> {
        let mut out: Vec<LevelSummary> = bundled_pack().iter().map(LevelSummary::of).collect();
        for id in self.stored_ids()? {
            match self.load(&id) {
                Ok(level) => out.push(LevelSummary::of(&level)),
                Err(StoreError::Invalid(_) | StoreError::NotFound(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Cell, Direction, RobotPose};

    fn level(walls: &[(i32, i32)]) -> Level {
        Level {
            id: "draft".into(),
            name: "My Maze".into(),
            width: 3,
            height: 3,
            start: RobotPose::new(Cell::new(0, 0), Direction::S),
            goal: Cell::new(2, 2),
            walls: walls.iter().map(|&(x, y)| Cell::new(x, y)).collect(),
        }
    }

    #[test]
    fn fresh_store_lists_the_pack() {
        let dir = tempfile::tempdir().unwrap();
        let store = LevelStore::open(dir.path()).unwrap();
        let ids: Vec<_> = store.list().unwrap().into_iter().map(|s| s.id).collect();
        let pack: Vec<_> = bundled_pack().iter().map(|l| l.id.clone()).collect();
        assert_eq!(ids, pack);
        assert_eq!(store.load("l01").unwrap(), bundled_pack()[0]);
    }

    #[test]
    fn save_load_round_trip_and_restart() {
        let dir = tempfile::tempdir().unwrap();
        let original = level(&[(1, 1)]);
        let id = {
            let store = LevelStore::open(dir.path()).unwrap();
            let id = store.save(&original).unwrap();
            assert_eq!(id, "custom-1");
            assert_eq!(store.save(&original).unwrap(), "custom-2");
            id
        };
        let store = LevelStore::open(dir.path()).unwrap();
        let loaded = store.load(&id).unwrap();
        assert_eq!(loaded, Level { id: id.clone(), ..original });
        let on_disk = fs::read_to_string(dir.path().join("custom-1.level.json")).unwrap();
        assert_eq!(on_disk, level_to_document(&loaded));
        let listed = store.list().unwrap();
        assert_eq!(listed.len(), bundled_pack().len() + 2);
        assert_eq!(listed.last().unwrap().shortest, Some(4));
        // no temporary files left behind
        let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names.len(), 2);
    }

    #[test]
    fn refusals() {
        let dir = tempfile::tempdir().unwrap();
        let store = LevelStore::open(dir.path()).unwrap();
        let err = store.save(&level(&[(1, 0), (1, 1), (1, 2)])).unwrap_err();
        assert!(matches!(err, StoreError::Unsolvable));
        assert_eq!(err.diagnostics()[0].code, Code::EUnsolvable);

        let err = store.save(&level(&[(2, 2)])).unwrap_err();
        assert_eq!(err.diagnostics()[0].code, Code::EGoalOnWall);

        for id in ["nope", "../etc/passwd", "", "custom-99"] {
            let err = store.load(id).unwrap_err();
            assert_eq!(err.diagnostics()[0].code, Code::ENotFound, "{id}");
        }
        assert_eq!(store.list().unwrap().len(), bundled_pack().len());
    }

    #[test]
    fn concurrent_saves_get_distinct_ids() {
        let dir = tempfile::tempdir().unwrap();
        let store = LevelStore::open(dir.path()).unwrap();
        let ids: Vec<String> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..8).map(|_| s.spawn(|| store.save(&level(&[])).unwrap())).collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut unique = ids.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), 8);
    }
}
