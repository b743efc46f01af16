//! Verification reports: named identity checks with pass/fail status and a
//! printed witness for the first failure.

use serde::Serialize;

use crate::linalg::FreeVector;

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    WindowVerified,
    Sampled,
}

impl Status {
    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }
}

/// How much of the (possibly infinite) domain a check covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Exhaustive,
    Window(i64),
    Sampled,
}

impl Scope {
    pub fn for_basis(finite: bool, window: i64) -> Scope {
        if finite {
            Scope::Exhaustive
        } else {
            Scope::Window(window)
        }
    }

    /// Combined scope of checks ranging over several bases.
    pub fn join(self, other: Scope) -> Scope {
        match (self, other) {
            (Scope::Sampled, _) | (_, Scope::Sampled) => Scope::Sampled,
            (Scope::Window(a), Scope::Window(b)) => Scope::Window(a.min(b)),
            (Scope::Window(a), _) | (_, Scope::Window(a)) => Scope::Window(a),
            _ => Scope::Exhaustive,
        }
    }

    fn success(self) -> Status {
        match self {
            Scope::Exhaustive => Status::Pass,
            Scope::Window(_) => Status::WindowVerified,
            Scope::Sampled => Status::Sampled,
        }
    }

    fn window(self) -> Option<i64> {
        match self {
            Scope::Window(w) => Some(w),
            _ => None,
        }
    }
}

/// All pairs from two lists, in lexicographic order.
pub fn pairs<'a, S, T>(xs: &'a [S], ys: &'a [T]) -> Vec<(&'a S, &'a T)> {
    xs.iter().flat_map(|x| ys.iter().map(move |y| (x, y))).collect()
}

/// All triples from three lists, in lexicographic order.
pub fn triples<'a, R, S, T>(xs: &'a [R], ys: &'a [S], zs: &'a [T]) -> Vec<(&'a R, &'a S, &'a T)> {
    xs.iter().flat_map(|x| ys.iter().flat_map(move |y| zs.iter().map(move |z| (x, y, z)))).collect()
}

/// Window used for checks over triples of an infinite basis.
pub fn triple_window(window: i64) -> i64 {
    (window + 1) / 2
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub tested: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize, Clone, Debug, Default, PartialEq)]
pub struct CheckReport {
    pub checks: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs `f` over every item until the first failure; `f` returns a
    /// witness description on failure.
    pub fn check<T>(
        &mut self,
        name: &str,
        scope: Scope,
        items: impl IntoIterator<Item = T>,
        mut f: impl FnMut(&T) -> Option<String>,
    ) -> bool {
        let mut tested = 0;
        for item in items {
            tested += 1;
            if let Some(w) = f(&item) {
                self.push(name, Status::Fail, tested, scope.window(), Some(w), None);
                return false;
            }
        }
        self.push(name, scope.success(), tested, scope.window(), None, None);
        true
    }

    /// Records a single yes/no outcome.
    pub fn record(
        &mut self,
        name: &str,
        scope: Scope,
        ok: bool,
        witness: Option<String>,
        detail: Option<String>,
    ) -> bool {
        let status = if ok { scope.success() } else { Status::Fail };
        self.push(name, status, 1, scope.window(), if ok { None } else { witness }, detail);
        ok
    }

    fn push(
        &mut self,
        name: &str,
        status: Status,
        tested: usize,
        window: Option<i64>,
        witness: Option<String>,
        detail: Option<String>,
    ) {
        self.checks.push(CheckEntry { name: name.to_string(), status, tested, window, witness, detail });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.status.is_fail())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| c.status.is_fail())
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}/{}", c.name);
            self.checks.push(c);
        }
    }
}

/// `None` when equal, otherwise a printed description of both sides.
pub fn mismatch(context: impl std::fmt::Display, lhs: &FreeVector, rhs: &FreeVector) -> Option<String> {
    (lhs != rhs).then(|| format!("at {context}: lhs = {lhs}, rhs = {rhs}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_recorded() {
        let mut r = CheckReport::new();
        r.check("even", Scope::Exhaustive, [2, 4, 5, 6], |x| (x % 2 != 0).then(|| x.to_string()));
        let e = r.get("even").unwrap();
        assert_eq!(e.status, Status::Fail);
        assert_eq!(e.witness.as_deref(), Some("5"));
        assert_eq!(e.tested, 3);
        assert!(!r.passed());
    }

    #[test]
    fn scope_determines_success_status() {
        let mut r = CheckReport::new();
        r.check("w", Scope::Window(4), [1], |_| None);
        r.check("s", Scope::Sampled, [1], |_| None);
        assert_eq!(r.status("w"), Some(Status::WindowVerified));
        assert_eq!(r.status("s"), Some(Status::Sampled));
        assert!(r.passed());
    }
}
