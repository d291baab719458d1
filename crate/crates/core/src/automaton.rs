//! Automata data model: nondeterministic and alternating Büchi automata over a
//! finite alphabet of interned letters, positive boolean formulas, and the
//! predecessor operator for explicit NBW.
//!
//! States and letters are dense indices. Automata are immutable once built;
//! every constructor validates its input and reports all problems at once.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Diagnostic, InvalidAutomaton};

/// A set of states, indexed by [`StateId`].
pub type StateSet = FixedBitSet;

/// A state index, dense in `[0, state_count)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

impl StateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A letter index into the alphabet table of an automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub usize);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A positive boolean formula over states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PosFormula {
    True,
    False,
    State(StateId),
    And(Vec<PosFormula>),
    Or(Vec<PosFormula>),
}

impl PosFormula {
    /// Disjunction of the given states; the empty disjunction is `False`.
    pub fn any_of<I: IntoIterator<Item = StateId>>(states: I) -> PosFormula {
        let mut children: Vec<PosFormula> = states.into_iter().map(PosFormula::State).collect();
        match children.len() {
            0 => PosFormula::False,
            1 => children.pop().unwrap(),
            _ => PosFormula::Or(children),
        }
    }

    /// Conjunction of the given formulas; the empty conjunction is `True`.
    pub fn all_of<I: IntoIterator<Item = PosFormula>>(parts: I) -> PosFormula {
        let mut children: Vec<PosFormula> = parts.into_iter().collect();
        match children.len() {
            0 => PosFormula::True,
            1 => children.pop().unwrap(),
            _ => PosFormula::And(children),
        }
    }

    /// Whether the assignment making exactly `set` true satisfies the formula.
    pub fn eval(&self, set: &StateSet) -> bool {
        match self {
            PosFormula::True => true,
            PosFormula::False => false,
            PosFormula::State(s) => set.contains(s.index()),
            PosFormula::And(children) => children.iter().all(|c| c.eval(set)),
            PosFormula::Or(children) => children.iter().any(|c| c.eval(set)),
        }
    }

    /// Calls `f` on every state mentioned in the formula.
    pub fn for_each_state(&self, f: &mut impl FnMut(StateId)) {
        match self {
            PosFormula::State(s) => f(*s),
            PosFormula::And(children) | PosFormula::Or(children) => {
                children.iter().for_each(|c| c.for_each_state(f))
            }
            PosFormula::True | PosFormula::False => {}
        }
    }

    fn check(&self, state_count: usize, problems: &mut Vec<String>) {
        match self {
            PosFormula::True | PosFormula::False => {}
            PosFormula::State(s) => {
                if s.index() >= state_count {
                    problems.push(format!("state {} out of range", s));
                }
            }
            PosFormula::And(children) | PosFormula::Or(children) => {
                if children.is_empty() {
                    problems.push("connective with no operands".to_string());
                }
                children.iter().for_each(|c| c.check(state_count, problems));
            }
        }
    }
}

impl fmt::Display for PosFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, children: &[PosFormula], op: &str) -> fmt::Result {
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    write!(f, " {} ", op)?;
                }
                match c {
                    PosFormula::And(_) | PosFormula::Or(_) => write!(f, "({})", c)?,
                    _ => write!(f, "{}", c)?,
                }
            }
            Ok(())
        }
        match self {
            PosFormula::True => write!(f, "true"),
            PosFormula::False => write!(f, "false"),
            PosFormula::State(s) => write!(f, "{}", s),
            PosFormula::And(children) => join(f, children, "&"),
            PosFormula::Or(children) => join(f, children, "|"),
        }
    }
}

/// `set ⊨ φ`.
pub fn eval_formula(formula: &PosFormula, set: &StateSet) -> bool {
    formula.eval(set)
}

fn check_alphabet(alphabet: &[String], diags: &mut Vec<Diagnostic>) {
    if alphabet.is_empty() {
        diags.push(Diagnostic::new("alphabet is empty"));
    }
    for (i, a) in alphabet.iter().enumerate() {
        if alphabet[..i].contains(a) {
            diags.push(Diagnostic::new(format!("duplicate letter `{}` in alphabet", a)));
        }
    }
}

fn check_header(
    state_count: usize,
    initial: StateId,
    accepting: &[StateId],
    diags: &mut Vec<Diagnostic>,
) {
    if state_count == 0 {
        diags.push(Diagnostic::new("automaton has no states"));
    }
    if initial.index() >= state_count {
        diags.push(Diagnostic::new(format!("initial state {} out of range", initial)));
    }
    for a in accepting {
        if a.index() >= state_count {
            diags.push(Diagnostic::new(format!("accepting state {} out of range", a)));
        }
    }
}

/// Nondeterministic Büchi automaton with an explicit successor relation.
///
/// An empty successor set models a missing transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nbw {
    alphabet: Vec<String>,
    state_count: usize,
    initial: StateId,
    accepting: StateSet,
    // delta[letter][state], sorted and deduplicated
    delta: Vec<Vec<Vec<StateId>>>,
}

impl Nbw {
    /// Builds and validates an NBW. Duplicate transitions are merged.
    pub fn new<A, T>(
        alphabet: Vec<String>,
        state_count: usize,
        initial: StateId,
        accepting: A,
        transitions: T,
    ) -> Result<Nbw, InvalidAutomaton>
    where
        A: IntoIterator<Item = StateId>,
        T: IntoIterator<Item = (StateId, Letter, StateId)>,
    {
        let accepting: Vec<StateId> = accepting.into_iter().collect();
        let mut diags = Vec::new();
        check_alphabet(&alphabet, &mut diags);
        check_header(state_count, initial, &accepting, &mut diags);

        let mut delta = vec![vec![Vec::new(); state_count]; alphabet.len()];
        for (from, letter, to) in transitions {
            let mut bad = false;
            if from.index() >= state_count {
                diags.push(Diagnostic::new(format!(
                    "transition source {} out of range (letter {})",
                    from, letter
                )));
                bad = true;
            }
            if letter.index() >= alphabet.len() {
                diags.push(Diagnostic::new(format!(
                    "unknown letter {} on transition from state {}",
                    letter, from
                )));
                bad = true;
            }
            if to.index() >= state_count {
                diags.push(Diagnostic::new(format!(
                    "transition target {} out of range at (state {}, letter {})",
                    to, from, letter
                )));
                bad = true;
            }
            if !bad {
                delta[letter.index()][from.index()].push(to);
            }
        }
        if !diags.is_empty() {
            return Err(InvalidAutomaton(diags));
        }
        for per_letter in &mut delta {
            for succ in per_letter.iter_mut() {
                succ.sort_unstable();
                succ.dedup();
            }
        }
        let mut acc = StateSet::with_capacity(state_count);
        for a in accepting {
            acc.insert(a.index());
        }
        Ok(Nbw {
            alphabet,
            state_count,
            initial,
            accepting: acc,
            delta,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.alphabet.len()).map(Letter)
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.state_count).map(StateId)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &StateSet {
        &self.accepting
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting.contains(s.index())
    }

    pub fn successors(&self, s: StateId, letter: Letter) -> &[StateId] {
        &self.delta[letter.index()][s.index()]
    }

    /// All transitions as `(source, letter, target)` triples, grouped by letter.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(a, per_letter)| {
            per_letter.iter().enumerate().flat_map(move |(s, succ)| {
                succ.iter().map(move |&t| (StateId(s), Letter(a), t))
            })
        })
    }

    pub fn transition_count(&self, letter: Letter) -> usize {
        self.delta[letter.index()].iter().map(Vec::len).sum()
    }

    /// States with at least one `letter`-successor in `targets`.
    pub fn pre(&self, letter: Letter, targets: &StateSet) -> StateSet {
        let mut result = StateSet::with_capacity(self.state_count);
        for (s, succ) in self.delta[letter.index()].iter().enumerate() {
            if succ.iter().any(|t| targets.contains(t.index())) {
                result.insert(s);
            }
        }
        result
    }

    /// Predecessors over all letters.
    pub fn pre_any(&self, targets: &StateSet) -> StateSet {
        let mut result = StateSet::with_capacity(self.state_count);
        for letter in self.letters() {
            result.union_with(&self.pre(letter, targets));
        }
        result
    }

    /// Same automaton with one more transition; `None` if it is already present.
    pub fn with_transition(&self, from: StateId, letter: Letter, to: StateId) -> Option<Nbw> {
        let succ = &self.delta[letter.index()][from.index()];
        if succ.binary_search(&to).is_ok() {
            return None;
        }
        let mut next = self.clone();
        let succ = &mut next.delta[letter.index()][from.index()];
        let pos = succ.binary_search(&to).unwrap_err();
        succ.insert(pos, to);
        Some(next)
    }

    /// The alternating view: each successor set becomes a disjunction, and an
    /// empty set becomes `False`.
    pub fn to_abw(&self) -> Abw {
        let delta = self
            .delta
            .iter()
            .map(|per_letter| {
                per_letter
                    .iter()
                    .map(|succ| PosFormula::any_of(succ.iter().copied()))
                    .collect()
            })
            .collect();
        Abw {
            alphabet: self.alphabet.clone(),
            state_count: self.state_count,
            initial: self.initial,
            accepting: self.accepting.clone(),
            delta,
        }
    }
}

/// `Pre_σ(L)` for an explicit NBW.
pub fn pre_nbw(automaton: &Nbw, letter: Letter, targets: &StateSet) -> StateSet {
    automaton.pre(letter, targets)
}

/// Alternating Büchi automaton; transitions are positive boolean formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abw {
    alphabet: Vec<String>,
    state_count: usize,
    initial: StateId,
    accepting: StateSet,
    // delta[letter][state]
    delta: Vec<Vec<PosFormula>>,
}

impl Abw {
    /// Builds and validates an ABW. Missing `(state, letter)` entries are
    /// `False`; repeated entries are merged by disjunction.
    pub fn new<A, T>(
        alphabet: Vec<String>,
        state_count: usize,
        initial: StateId,
        accepting: A,
        transitions: T,
    ) -> Result<Abw, InvalidAutomaton>
    where
        A: IntoIterator<Item = StateId>,
        T: IntoIterator<Item = (StateId, Letter, PosFormula)>,
    {
        let accepting: Vec<StateId> = accepting.into_iter().collect();
        let mut diags = Vec::new();
        check_alphabet(&alphabet, &mut diags);
        check_header(state_count, initial, &accepting, &mut diags);

        let mut parts: Vec<Vec<Vec<PosFormula>>> =
            vec![vec![Vec::new(); state_count]; alphabet.len()];
        for (from, letter, formula) in transitions {
            let mut bad = false;
            if from.index() >= state_count {
                diags.push(Diagnostic::new(format!(
                    "transition source {} out of range (letter {})",
                    from, letter
                )));
                bad = true;
            }
            if letter.index() >= alphabet.len() {
                diags.push(Diagnostic::new(format!(
                    "unknown letter {} on transition from state {}",
                    letter, from
                )));
                bad = true;
            }
            let mut problems = Vec::new();
            formula.check(state_count, &mut problems);
            for p in problems {
                diags.push(Diagnostic::new(format!(
                    "formula at (state {}, letter {}): {}",
                    from, letter, p
                )));
                bad = true;
            }
            if !bad {
                parts[letter.index()][from.index()].push(formula);
            }
        }
        if !diags.is_empty() {
            return Err(InvalidAutomaton(diags));
        }
        let delta = parts
            .into_iter()
            .map(|per_letter| {
                per_letter
                    .into_iter()
                    .map(|mut fs| match fs.len() {
                        0 => PosFormula::False,
                        1 => fs.pop().unwrap(),
                        _ => PosFormula::Or(fs),
                    })
                    .collect()
            })
            .collect();
        let mut acc = StateSet::with_capacity(state_count);
        for a in accepting {
            acc.insert(a.index());
        }
        Ok(Abw {
            alphabet,
            state_count,
            initial,
            accepting: acc,
            delta,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.alphabet.len()).map(Letter)
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.state_count).map(StateId)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &StateSet {
        &self.accepting
    }

    pub fn is_accepting(&self, s: StateId) -> bool {
        self.accepting.contains(s.index())
    }

    pub fn transition(&self, s: StateId, letter: Letter) -> &PosFormula {
        &self.delta[letter.index()][s.index()]
    }

    /// States `ℓ` such that `set ⊨ δ(ℓ, letter)`.
    pub fn satisfied_by(&self, letter: Letter, set: &StateSet) -> StateSet {
        let mut result = StateSet::with_capacity(self.state_count);
        for (s, formula) in self.delta[letter.index()].iter().enumerate() {
            if formula.eval(set) {
                result.insert(s);
            }
        }
        result
    }
}
