//! Certainty-equivalent lines and their upper envelope over the belief
//! parameter.
//!
//! Expected payoff is linear in the belief parameter, so each alternative
//! traces a [`Line`] over `[0, 1]` and the best achievable value is the upper
//! envelope of all the lines. [`upper_envelope`] builds that envelope with
//! the standard convex-hull-of-lines sweep: sort by slope, then discard each
//! line that is overtaken before its predecessor is. Everything downstream
//! (evaluation, integration) is exact closed-form arithmetic on the
//! resulting segments.

use crate::error::Error;
use crate::model::{BeliefFamily, DecisionModel};
use crate::tol;

/// A payoff line `value(p) = intercept + slope * p` tagged with the label of
/// whatever it describes, usually an alternative.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub intercept: f64,
    pub slope: f64,
    pub label: String,
}

impl Line {
    pub fn new(intercept: f64, slope: f64, label: impl Into<String>) -> Self {
        Line { intercept, slope, label: label.into() }
    }

    pub fn value_at(&self, p: f64) -> f64 {
        self.intercept + self.slope * p
    }

    /// Exact integral over `[lo, hi]`, a subinterval of `[0, 1]`:
    /// `intercept * (hi - lo) + slope * (hi^2 - lo^2) / 2`.
    pub fn integral(&self, lo: f64, hi: f64) -> crate::Result<f64> {
        check_interval(lo, hi)?;
        Ok(self.intercept * (hi - lo) + self.slope * (hi * hi - lo * lo) / 2.0)
    }
}

/// One maximal piece of an envelope: `line` is the top line on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub line: Line,
}

/// Upper envelope of a line set over the parameter interval `[0, 1]`.
///
/// Segments partition `[0, 1]` exactly: the first starts at 0, the last ends
/// at 1, and consecutive segments share an endpoint. The original input
/// lines are kept so evaluation can report every line that attains the
/// envelope value, not just the one labelling the segment.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    lines: Vec<Line>,
    segments: Vec<Segment>,
}

fn check_interval(lo: f64, hi: f64) -> crate::Result<()> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi || lo < 0.0 || hi > 1.0 {
        return Err(Error::BadInterval { lo, hi });
    }
    Ok(())
}

/// Certainty-equivalent line of one alternative under a belief family.
///
/// The intercept is the alternative's expected payoff at parameter 0 and the
/// slope is the change in expected payoff from parameter 0 to parameter 1.
pub fn ce_line(
    model: &DecisionModel,
    family: &BeliefFamily,
    alternative: &str,
) -> crate::Result<Line> {
    if family.states() != model.states() {
        return Err(Error::StateMismatch);
    }
    let d = model
        .alternative_index(alternative)
        .ok_or_else(|| Error::UnknownAlternative(alternative.to_owned()))?;
    let at0 = model.expected_payoff(d, family.endpoint0());
    let at1 = model.expected_payoff(d, family.endpoint1());
    Ok(Line::new(at0, at1 - at0, alternative))
}

/// Certainty-equivalent lines of every alternative, in declaration order.
pub fn ce_lines(model: &DecisionModel, family: &BeliefFamily) -> crate::Result<Vec<Line>> {
    model
        .alternatives()
        .iter()
        .map(|a| ce_line(model, family, a))
        .collect()
}

/// Parameter where candidate `a` is overtaken by the steeper candidate `b`.
fn crossing(a: &Candidate, b: &Candidate) -> f64 {
    (a.intercept - b.intercept) / (b.slope - a.slope)
}

struct Candidate {
    intercept: f64,
    slope: f64,
    index: usize,
}

/// Builds the upper envelope of `lines` over `[0, 1]`.
///
/// Ties resolve toward the earliest declared line: exact duplicates collapse
/// to the lowest input index and a parallel line below another is dropped.
/// Breakpoints closer than [`tol::BREAKPOINT_EPS`] are merged, so zero-width
/// segments never appear.
pub fn upper_envelope(lines: &[Line]) -> crate::Result<Envelope> {
    if lines.is_empty() {
        return Err(Error::NoLines);
    }
    for l in lines {
        if !l.intercept.is_finite() || !l.slope.is_finite() {
            return Err(Error::NonFiniteLine(l.label.clone()));
        }
    }

    let mut cands: Vec<Candidate> = lines
        .iter()
        .enumerate()
        .map(|(index, l)| Candidate { intercept: l.intercept, slope: l.slope, index })
        .collect();
    // Slope ascending; within a slope the highest intercept first, and among
    // exact duplicates the lowest input index first. Keeping only the first
    // candidate per slope then handles both the parallel and the duplicate
    // case at once.
    cands.sort_by(|a, b| {
        a.slope
            .total_cmp(&b.slope)
            .then(b.intercept.total_cmp(&a.intercept))
            .then(a.index.cmp(&b.index))
    });
    cands.dedup_by(|b, a| b.slope == a.slope);

    // Hull sweep over strictly increasing slopes: the top of the stack is
    // discarded when the incoming line overtakes the line below the top no
    // later than the top itself does.
    let mut hull: Vec<Candidate> = Vec::new();
    for c in cands {
        while hull.len() >= 2 {
            let below = &hull[hull.len() - 2];
            let top = &hull[hull.len() - 1];
            if crossing(below, &c) <= crossing(below, top) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(c);
    }

    // Clip the hull to [0, 1]. Dropping a sliver below BREAKPOINT_EPS leaves
    // the cursor in place, so the next kept segment absorbs the gap and the
    // segments still partition [0, 1] exactly.
    let mut segments = Vec::new();
    let mut cursor = 0.0;
    for i in 0..hull.len() {
        let hi = if i + 1 < hull.len() {
            crossing(&hull[i], &hull[i + 1]).min(1.0).max(cursor)
        } else {
            1.0
        };
        if hi - cursor >= tol::BREAKPOINT_EPS {
            segments.push(Segment { lo: cursor, hi, line: lines[hull[i].index].clone() });
            cursor = hi;
        }
    }
    if let Some(last) = segments.last_mut() {
        last.hi = 1.0;
    }

    Ok(Envelope { lines: lines.to_vec(), segments })
}

impl Envelope {
    /// The maximal pieces, left to right.
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// The lines the envelope was built from, in input order.
    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// Interior parameter values where the top line changes.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.segments
            .iter()
            .take(self.segments.len().saturating_sub(1))
            .map(|s| s.hi)
            .collect()
    }

    /// Envelope value at `p` together with every input line within
    /// [`tol::VALUE_EPS`] of that value, in input order.
    pub fn evaluate(&self, p: f64) -> crate::Result<(f64, Vec<String>)> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::ParameterOutOfRange(p));
        }
        let seg = self
            .segments
            .iter()
            .find(|s| p <= s.hi)
            .unwrap_or_else(|| self.segments.last().expect("envelope has segments"));
        let value = seg.line.value_at(p);
        let mut active = Vec::new();
        for l in &self.lines {
            if (l.value_at(p) - value).abs() <= tol::VALUE_EPS
                && !active.iter().any(|a| a == &l.label)
            {
                active.push(l.label.clone());
            }
        }
        Ok((value, active))
    }

    /// Exact integral of the envelope over `[lo, hi]`, summed segment by
    /// segment.
    pub fn integral(&self, lo: f64, hi: f64) -> crate::Result<f64> {
        check_interval(lo, hi)?;
        let mut total = 0.0;
        for seg in &self.segments {
            let a = seg.lo.max(lo);
            let b = seg.hi.min(hi);
            if b > a {
                total += seg.line.integral(a, b)?;
            }
        }
        Ok(total)
    }
}
