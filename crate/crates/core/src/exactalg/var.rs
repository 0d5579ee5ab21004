use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

fn interner() -> &'static Mutex<HashSet<Arc<str>>> {
    static INTERNER: OnceLock<Mutex<HashSet<Arc<str>>>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// A variable name from the single global namespace.
///
/// Names are interned, so equal names share one allocation. Ordering is
/// "natural": the alphabetic stem is compared first and a trailing `_<digits>`
/// suffix is compared numerically, which keeps `x_2 < x_10`.
#[derive(Clone)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Var {
        let mut set = interner().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(existing) = set.get(name) {
            return Var(existing.clone());
        }
        let arc: Arc<str> = Arc::from(name);
        set.insert(arc.clone());
        Var(arc)
    }

    /// The indexed variable `<stem>_<index>`.
    pub fn indexed(stem: &str, index: usize) -> Var {
        Var::new(&format!("{stem}_{index}"))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, Option<u64>) {
        let s: &str = &self.0;
        if let Some(pos) = s.rfind('_') {
            let digits = &s[pos + 1..];
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                if let Ok(v) = digits.parse() {
                    return (&s[..pos], Some(v));
                }
            }
        }
        (s, None)
    }
}

impl PartialEq for Var {
    fn eq(&self, other: &Var) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Var {}

impl Hash for Var {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Var) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let (a_stem, a_idx) = self.split();
        let (b_stem, b_idx) = other.split();
        a_stem
            .cmp(b_stem)
            .then(a_idx.cmp(&b_idx))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Var) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Var {
        Var::new(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interned_names_share_storage() {
        let a = Var::new("x_3");
        let b = Var::new("x_3");
        assert!(Arc::ptr_eq(&a.0, &b.0));
        assert_ne!(Var::new("x"), Var::new("y"));
    }

    #[test]
    fn natural_order() {
        let mut vs: Vec<Var> = ["x_10", "x_2", "e_1", "x", "x_1", "y"]
            .into_iter()
            .map(Var::new)
            .collect();
        vs.sort();
        let names: Vec<&str> = vs.iter().map(Var::name).collect();
        assert_eq!(names, ["e_1", "x", "x_1", "x_2", "x_10", "y"]);
    }
}
