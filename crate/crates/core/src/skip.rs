//! Skip level: which relator pairs a substring-replacement pass searches.
//!
//! Four policies share the [`Searcher`] interface:
//!
//! * `AllPairs` searches every pair every pass.
//! * `ChangeFlags` searches a pair when either member changed since the
//!   start of the previous pass.
//! * `TsSorted` is the timestamp algorithm for a relator sequence kept
//!   sorted by length at all times (`R.tp <= R'.ts` decides).
//! * `TsUnsorted` is the timestamp algorithm for a sequence whose positions
//!   stay fixed within a pass and which is re-sorted between passes.
//!
//! The sorted-loop policies (`AllPairs`, `ChangeFlags`, `TsSorted`) walk the
//! same position loop, re-inserting a shortened text at its sorted position,
//! so they differ only in which searches they skip.
//!
//! [`necessary_set_oracle`] recomputes, from the event and change logs
//! alone, which searches were necessary; the timestamp policies must
//! perform exactly those.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{Edits, Presentation, RelatorId, RelatorRecord};
use crate::words::{Involutions, Word};

/// Marks a relator changed by operations outside the pass (unsorted policy).
pub const CHANGED_OUTSIDE_PASS: i64 = i64::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipPolicy {
    AllPairs,
    ChangeFlags,
    TsSorted,
    TsUnsorted,
}

impl SkipPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            SkipPolicy::AllPairs => "all-pairs",
            SkipPolicy::ChangeFlags => "flags",
            SkipPolicy::TsSorted => "ts-sorted",
            SkipPolicy::TsUnsorted => "ts-unsorted",
        }
    }

    pub fn all() -> [SkipPolicy; 4] {
        [SkipPolicy::AllPairs, SkipPolicy::ChangeFlags, SkipPolicy::TsSorted, SkipPolicy::TsUnsorted]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkipError {
    #[error("relator sequence is not sorted by length")]
    Unsorted,
    #[error("pass driver for {expected:?} called with context policy {actual:?}")]
    PolicyMismatch { expected: SkipPolicy, actual: SkipPolicy },
}

/// One considered relator pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchEvent {
    pub pattern_id: RelatorId,
    pub text_id: RelatorId,
    pub pass_no: usize,
    /// Position in the global event/change order.
    pub clock: u64,
    pub performed: bool,
    pub successful: bool,
}

/// Change history per relator id, on the same clock as the events. A change
/// made by a search is stamped after that search.
#[derive(Clone, Debug, Default)]
pub struct ChangeLog {
    changes: HashMap<RelatorId, Vec<u64>>,
}

impl ChangeLog {
    pub fn record(&mut self, id: RelatorId, clock: u64) {
        self.changes.entry(id).or_default().push(clock);
    }

    /// Whether `id` changed strictly between two clock values.
    pub fn changed_between(&self, id: RelatorId, after: u64, before: u64) -> bool {
        self.changes.get(&id).is_some_and(|v| v.iter().any(|&c| c > after && c < before))
    }

    pub fn last_change(&self, id: RelatorId) -> Option<u64> {
        self.changes.get(&id).and_then(|v| v.last().copied())
    }
}

/// Full search step: returns the new text word when the text changes.
pub trait Searcher {
    fn com_str(&mut self, pattern: &RelatorRecord, text: &RelatorRecord, involutions: &Involutions) -> Option<Word>;
}

impl<F> Searcher for F
where
    F: FnMut(&RelatorRecord, &RelatorRecord, &Involutions) -> Option<Word>,
{
    fn com_str(&mut self, pattern: &RelatorRecord, text: &RelatorRecord, involutions: &Involutions) -> Option<Word> {
        self(pattern, text, involutions)
    }
}

#[derive(Clone, Debug, Default)]
pub struct PassOutcome {
    pub changed: bool,
    pub events: Vec<SearchEvent>,
}

impl PassOutcome {
    pub fn performed(&self) -> usize {
        self.events.iter().filter(|e| e.performed).count()
    }

    pub fn successful(&self) -> usize {
        self.events.iter().filter(|e| e.successful).count()
    }
}

/// State carried across passes for one policy.
#[derive(Clone, Debug)]
pub struct PassContext {
    policy: SkipPolicy,
    /// Global pattern clock of the sorted timestamp algorithm.
    timer: i64,
    /// Per-position change marks of the unsorted algorithm, 1-based.
    ts_local: Vec<i64>,
    passes_run: usize,
    clock: u64,
    pending_flags: HashSet<RelatorId>,
    active_flags: HashSet<RelatorId>,
    log: ChangeLog,
}

impl PassContext {
    pub fn new(policy: SkipPolicy) -> Self {
        PassContext {
            policy,
            timer: 1,
            ts_local: Vec::new(),
            passes_run: 0,
            clock: 0,
            pending_flags: HashSet::new(),
            active_flags: HashSet::new(),
            log: ChangeLog::default(),
        }
    }

    pub fn policy(&self) -> SkipPolicy {
        self.policy
    }

    pub fn timer(&self) -> i64 {
        self.timer
    }

    pub fn passes_run(&self) -> usize {
        self.passes_run
    }

    pub fn change_log(&self) -> &ChangeLog {
        &self.log
    }

    fn tick(&mut self) -> u64 {
        self.clock += 1;
        self.clock
    }

    /// Records every current relator as created now.
    pub fn register_all(&mut self, p: &Presentation) {
        let c = self.tick();
        for r in &p.rel {
            self.log.record(r.id, c);
        }
    }

    /// A relator edited or created by an operation outside the pass.
    pub fn note_changed(&mut self, rec: &mut RelatorRecord) {
        let c = self.tick();
        self.log.record(rec.id, c);
        match self.policy {
            SkipPolicy::TsSorted => {
                rec.tp = -1;
                rec.ts = self.timer;
                self.timer += 1;
            }
            SkipPolicy::TsUnsorted => {
                rec.tp = CHANGED_OUTSIDE_PASS;
                rec.ts = CHANGED_OUTSIDE_PASS;
            }
            SkipPolicy::ChangeFlags => {
                self.pending_flags.insert(rec.id);
            }
            SkipPolicy::AllPairs => {}
        }
    }

    /// Applies [`PassContext::note_changed`] to every edited relator.
    pub fn note_edits(&mut self, p: &mut Presentation, edits: &Edits) {
        for r in p.rel.iter_mut().filter(|r| edits.changed.contains(&r.id)) {
            self.note_changed(r);
        }
    }

    fn note_changed_in_pass(&mut self, rec: &mut RelatorRecord, clock: u64) {
        self.log.record(rec.id, clock + 1);
        self.clock = self.clock.max(clock + 1);
        match self.policy {
            SkipPolicy::TsSorted => {
                rec.tp = -1;
                rec.ts = self.timer;
            }
            SkipPolicy::ChangeFlags => {
                self.pending_flags.insert(rec.id);
                self.active_flags.insert(rec.id);
            }
            SkipPolicy::TsUnsorted | SkipPolicy::AllPairs => {}
        }
    }

    fn expect_policy(&self, expected: &[SkipPolicy]) -> Result<(), SkipError> {
        if expected.contains(&self.policy) {
            Ok(())
        } else {
            Err(SkipError::PolicyMismatch { expected: expected[0], actual: self.policy })
        }
    }

    /// Runs one pass under the context's policy.
    pub fn run_pass(&mut self, p: &mut Presentation, searcher: &mut dyn Searcher) -> Result<PassOutcome, SkipError> {
        match self.policy {
            SkipPolicy::AllPairs => pass_all_pairs(p, self, searcher),
            SkipPolicy::ChangeFlags => pass_change_flags(p, self, searcher),
            SkipPolicy::TsSorted => pass_sorted(p, self, searcher),
            SkipPolicy::TsUnsorted => pass_unsorted(p, self, searcher),
        }
    }
}

fn remove_dead(p: &mut Presentation) {
    p.rel.retain(|r| !r.is_empty());
}

/// Sorted position for a text at `t` that shrank to `len`: after every
/// live relator that is not longer. Never moves it past `t`.
fn sorted_slot(rel: &[RelatorRecord], t: usize, len: usize) -> usize {
    (0..t).find(|&k| !rel[k].is_empty() && rel[k].len() > len).unwrap_or(t)
}

/// The position loop shared by the three sorted policies.
fn sorted_loop(p: &mut Presentation, ctx: &mut PassContext, searcher: &mut dyn Searcher) -> Result<PassOutcome, SkipError> {
    if !p.is_sorted() {
        return Err(SkipError::Unsorted);
    }
    let policy = ctx.policy;
    let first = ctx.passes_run == 0;
    let pass_no = ctx.passes_run;
    if policy == SkipPolicy::TsSorted && first {
        for r in &mut p.rel {
            r.tp = -1;
            r.ts = 0;
        }
        ctx.timer = 1;
    }
    if policy == SkipPolicy::ChangeFlags {
        ctx.active_flags = std::mem::take(&mut ctx.pending_flags);
    }
    let inv = p.involutions.clone();
    let n = p.rel.len();
    let mut out = PassOutcome::default();
    let mut pi = 0;
    while pi < n {
        if p.rel[pi].is_empty() {
            pi += 1;
            continue;
        }
        let mut ti = pi;
        while ti + 1 < n {
            ti += 1;
            if p.rel[ti].is_empty() {
                continue;
            }
            let (pat, txt) = (&p.rel[pi], &p.rel[ti]);
            let search = match policy {
                SkipPolicy::AllPairs => true,
                SkipPolicy::ChangeFlags => {
                    first || ctx.active_flags.contains(&pat.id) || ctx.active_flags.contains(&txt.id)
                }
                SkipPolicy::TsSorted => pat.tp <= txt.ts,
                SkipPolicy::TsUnsorted => unreachable!("unsorted policy has its own loop"),
            };
            let clock = ctx.tick();
            let mut ev = SearchEvent {
                pattern_id: pat.id,
                text_id: txt.id,
                pass_no,
                clock,
                performed: search,
                successful: false,
            };
            if search {
                if let Some(word) = searcher.com_str(pat, txt, &inv) {
                    ev.successful = true;
                    out.changed = true;
                    let rec = &mut p.rel[ti];
                    rec.set_word(word);
                    ctx.note_changed_in_pass(rec, clock);
                    if !rec.is_empty() {
                        let len = rec.len();
                        let k = sorted_slot(&p.rel, ti, len);
                        p.rel[k..=ti].rotate_right(1);
                        // Dropped below the pattern: it keeps tp = -1 and is
                        // not a pattern again this pass.
                        if k <= pi {
                            pi += 1;
                        }
                    }
                }
            }
            out.events.push(ev);
        }
        if policy == SkipPolicy::TsSorted {
            p.rel[pi].tp = ctx.timer;
            ctx.timer += 1;
        }
        pi += 1;
    }
    remove_dead(p);
    p.sort_rel();
    ctx.passes_run += 1;
    Ok(out)
}

/// Timestamp pass over a relator sequence kept sorted throughout.
pub fn pass_sorted(p: &mut Presentation, ctx: &mut PassContext, searcher: &mut dyn Searcher) -> Result<PassOutcome, SkipError> {
    ctx.expect_policy(&[SkipPolicy::TsSorted])?;
    sorted_loop(p, ctx, searcher)
}

/// Change-flag baseline.
pub fn pass_change_flags(p: &mut Presentation, ctx: &mut PassContext, searcher: &mut dyn Searcher) -> Result<PassOutcome, SkipError> {
    ctx.expect_policy(&[SkipPolicy::ChangeFlags])?;
    sorted_loop(p, ctx, searcher)
}

/// Every pair, every pass.
pub fn pass_all_pairs(p: &mut Presentation, ctx: &mut PassContext, searcher: &mut dyn Searcher) -> Result<PassOutcome, SkipError> {
    ctx.expect_policy(&[SkipPolicy::AllPairs])?;
    sorted_loop(p, ctx, searcher)
}

/// Timestamp pass with positions frozen for the pass; sorts afterwards.
///
/// Pairs whose text is shorter than the pattern at their frozen positions
/// are not considered this pass; the `tp` ordering test picks them up after
/// the re-sort.
pub fn pass_unsorted(p: &mut Presentation, ctx: &mut PassContext, searcher: &mut dyn Searcher) -> Result<PassOutcome, SkipError> {
    ctx.expect_policy(&[SkipPolicy::TsUnsorted])?;
    if !p.is_sorted() {
        return Err(SkipError::Unsorted);
    }
    let n = p.rel.len();
    let pass_no = ctx.passes_run;
    if ctx.passes_run == 0 {
        for (k, r) in p.rel.iter_mut().enumerate() {
            r.tp = k as i64 + 1;
            r.ts = k as i64 + 1;
        }
    }
    ctx.ts_local = vec![0; n + 1];
    let inv = p.involutions.clone();
    let mut out = PassOutcome::default();
    for pp in 1..=n {
        let pi = pp - 1;
        if !p.rel[pi].is_empty() {
            for tt in pp + 1..=n {
                let ti = tt - 1;
                let (pat, txt) = (&p.rel[pi], &p.rel[ti]);
                if txt.is_empty() || txt.len() < pat.len() {
                    continue;
                }
                let search = ctx.ts_local[pp] + ctx.ts_local[tt] != 0 || pat.tp > txt.tp || pat.tp <= txt.ts;
                let clock = ctx.tick();
                let mut ev = SearchEvent {
                    pattern_id: pat.id,
                    text_id: txt.id,
                    pass_no,
                    clock,
                    performed: search,
                    successful: false,
                };
                if search {
                    if let Some(word) = searcher.com_str(pat, txt, &inv) {
                        ev.successful = true;
                        out.changed = true;
                        let rec = &mut p.rel[ti];
                        rec.set_word(word);
                        ctx.note_changed_in_pass(rec, clock);
                        ctx.ts_local[tt] = pp as i64;
                    }
                }
                out.events.push(ev);
            }
        }
        // Applied to the last position as well, so its stamps are current.
        p.rel[pi].tp = pp as i64;
        p.rel[pi].ts = ctx.ts_local[pp];
    }
    remove_dead(p);
    p.sort_rel();
    ctx.passes_run += 1;
    Ok(out)
}

/// The necessary searches among the considered pairs: a pair is necessary
/// when it was never searched before, or when either member changed after
/// its previous search.
pub fn necessary_set_oracle(events: &[SearchEvent], changes: &ChangeLog) -> BTreeSet<(RelatorId, RelatorId, usize)> {
    let mut last: HashMap<(RelatorId, RelatorId), u64> = HashMap::new();
    let mut out = BTreeSet::new();
    for e in events {
        let key = pair_key(e.pattern_id, e.text_id);
        let necessary = match last.get(&key) {
            None => true,
            Some(&prev) => {
                changes.changed_between(e.pattern_id, prev, e.clock) || changes.changed_between(e.text_id, prev, e.clock)
            }
        };
        if necessary {
            out.insert((e.pattern_id, e.text_id, e.pass_no));
        }
        if e.performed {
            last.insert(key, e.clock);
        }
    }
    out
}

/// Searches actually performed, in the oracle's key format.
pub fn performed_set(events: &[SearchEvent]) -> BTreeSet<(RelatorId, RelatorId, usize)> {
    events.iter().filter(|e| e.performed).map(|e| (e.pattern_id, e.text_id, e.pass_no)).collect()
}

/// Pairs of current relators whose last search predates a change to either
/// member (or that were never searched). Empty once a run is quiescent.
pub fn pending_pairs(p: &Presentation, events: &[SearchEvent], changes: &ChangeLog) -> Vec<(RelatorId, RelatorId)> {
    let mut last: HashMap<(RelatorId, RelatorId), u64> = HashMap::new();
    for e in events.iter().filter(|e| e.performed) {
        last.insert(pair_key(e.pattern_id, e.text_id), e.clock);
    }
    let mut out = Vec::new();
    for (i, a) in p.rel.iter().enumerate() {
        for b in &p.rel[i + 1..] {
            let stale = match last.get(&pair_key(a.id, b.id)) {
                None => true,
                Some(&c) => {
                    changes.last_change(a.id).is_some_and(|x| x > c) || changes.last_change(b.id).is_some_and(|x| x > c)
                }
            };
            if stale {
                out.push((a.id, b.id));
            }
        }
    }
    out
}

fn pair_key(a: RelatorId, b: RelatorId) -> (RelatorId, RelatorId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
