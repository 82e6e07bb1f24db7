//! Turing machines over the alphabet {0, 1}, a fixed self-delimiting
//! enumeration, and a step-exact simulator.
//!
//! # Encoding v1
//!
//! A code `m` is read as follows: `m = 0` is malformed; otherwise strip the
//! leading 1 bit of `m`'s binary form and parse the remaining bits as
//!
//! 1. the state count `S >= 1` in Elias gamma code (`floor(log2 S)` zeros,
//!    then `S`'s binary digits),
//! 2. `2S` table entries, for `(state 0, symbol 0), (state 0, symbol 1),
//!    (state 1, symbol 0), ...`; an entry is either the single bit `1`
//!    (halt) or `0` followed by the written symbol (1 bit), the move
//!    (1 bit, 0 = left, 1 = right) and the next state in
//!    `ceil(log2 S)` fixed-width bits.
//!
//! A code is malformed if the bits run out, a next-state field is `>= S`,
//! `S` exceeds [`MAX_STATES`], or bits are left over. Every malformed code
//! decodes to the one-state machine that halts on its first step, so
//! decoding is total. `decode(encode(M)) = M` for every well-formed `M`;
//! the reverse need not hold.
//!
//! # Step counting
//!
//! One step is one applied table entry, and executing a halt entry is
//! itself the final step: a machine whose very first lookup is a halt entry
//! halts at step 1, never step 0, so "halts in exactly n steps" is well
//! defined for n >= 1.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::value::Nat;

/// Version tag for the enumeration; exact sequence values are only
/// meaningful relative to it.
pub const ENCODING_VERSION: &str = "v1";

/// States above this bound are treated as malformed codes.
pub const MAX_STATES: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Halt,
    Step { write: bool, mv: Move, next: u32 },
}

/// A deterministic machine: every `(state, symbol)` pair has exactly one
/// entry. State 0 is the start state; the tape is unbounded in both
/// directions with blank symbol 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Machine {
    /// `actions[q] = [entry on 0, entry on 1]`
    pub actions: Vec<[Action; 2]>,
}

impl Machine {
    pub fn state_count(&self) -> u32 {
        self.actions.len() as u32
    }

    /// The designated fallback: one state, both entries halt.
    pub fn immediate_halt() -> Machine {
        Machine {
            actions: vec![[Action::Halt, Action::Halt]],
        }
    }
}

struct BitReader {
    bits: Vec<bool>,
    pos: usize,
}

impl BitReader {
    fn take(&mut self) -> Option<bool> {
        let b = self.bits.get(self.pos).copied();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn take_width(&mut self, width: u32) -> Option<u32> {
        let mut out = 0u32;
        for _ in 0..width {
            out = (out << 1) | self.take()? as u32;
        }
        Some(out)
    }

    fn exhausted(&self) -> bool {
        self.pos == self.bits.len()
    }
}

fn payload_bits(code: &Nat) -> Option<Vec<bool>> {
    if code.is_zero() {
        return None;
    }
    let total = code.bits();
    // skip the leading 1; remaining bits most-significant first
    Some((0..total - 1).rev().map(|i| code.bit(i)).collect())
}

fn next_state_width(states: u32) -> u32 {
    if states <= 1 {
        0
    } else {
        32 - (states - 1).leading_zeros()
    }
}

fn try_decode(code: &Nat) -> Option<Machine> {
    let mut r = BitReader {
        bits: payload_bits(code)?,
        pos: 0,
    };
    // Elias gamma: z zeros, then the z+1 significant bits of S
    let mut zeros = 0u32;
    loop {
        match r.take()? {
            true => break,
            false => zeros += 1,
        }
        if zeros > 31 {
            return None;
        }
    }
    let mut states = 1u32;
    for _ in 0..zeros {
        states = (states << 1) | r.take()? as u32;
    }
    if states > MAX_STATES {
        return None;
    }
    let width = next_state_width(states);
    let mut actions = Vec::with_capacity(states as usize);
    for _ in 0..states {
        let mut entry = [Action::Halt, Action::Halt];
        for slot in &mut entry {
            *slot = if r.take()? {
                Action::Halt
            } else {
                let write = r.take()?;
                let mv = if r.take()? { Move::Right } else { Move::Left };
                let next = r.take_width(width)?;
                if next >= states {
                    return None;
                }
                Action::Step { write, mv, next }
            };
        }
        actions.push(entry);
    }
    if !r.exhausted() {
        return None;
    }
    Some(Machine { actions })
}

/// Total decoding: malformed codes fall back to [`Machine::immediate_halt`].
pub fn decode(code: &Nat) -> Machine {
    try_decode(code).unwrap_or_else(Machine::immediate_halt)
}

/// Inverse of [`decode`] on well-formed machines.
pub fn encode(machine: &Machine) -> Nat {
    let states = machine.state_count();
    assert!((1..=MAX_STATES).contains(&states));
    let width = next_state_width(states);
    let mut bits: Vec<bool> = vec![true]; // the stripped leading 1
    let sig = 32 - states.leading_zeros();
    bits.extend(std::iter::repeat_n(false, (sig - 1) as usize));
    for i in (0..sig).rev() {
        bits.push(states & (1 << i) != 0);
    }
    for entry in &machine.actions {
        for action in entry {
            match action {
                Action::Halt => bits.push(true),
                Action::Step { write, mv, next } => {
                    bits.push(false);
                    bits.push(*write);
                    bits.push(*mv == Move::Right);
                    for i in (0..width).rev() {
                        bits.push(next & (1 << i) != 0);
                    }
                }
            }
        }
    }
    let mut out = BigUint::zero();
    for b in bits {
        out = (out << 1u8) | BigUint::from(b as u8);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaltStatus {
    /// Halted at exactly this step (the halt lookup included).
    Halted { step: u64 },
    /// Did not halt within the budget.
    Running,
}

impl HaltStatus {
    pub fn halted_at(&self) -> Option<u64> {
        match self {
            HaltStatus::Halted { step } => Some(*step),
            HaltStatus::Running => None,
        }
    }
}

struct Tape {
    nonneg: Vec<bool>,
    neg: Vec<bool>,
}

impl Tape {
    fn unary(ones: u64) -> Tape {
        Tape {
            nonneg: vec![true; ones as usize],
            neg: Vec::new(),
        }
    }

    fn read(&self, pos: i64) -> bool {
        if pos >= 0 {
            self.nonneg.get(pos as usize).copied().unwrap_or(false)
        } else {
            self.neg.get((-pos - 1) as usize).copied().unwrap_or(false)
        }
    }

    fn write(&mut self, pos: i64, v: bool) {
        let (store, idx) = if pos >= 0 {
            (&mut self.nonneg, pos as usize)
        } else {
            (&mut self.neg, (-pos - 1) as usize)
        };
        if idx >= store.len() {
            store.resize(idx + 1, false);
        }
        store[idx] = v;
    }
}

/// Runs `machine` on a tape holding `input` in unary (that many 1s, head on
/// the leftmost input cell) for at most `budget` steps.
pub fn simulate(machine: &Machine, input: u64, budget: u64) -> HaltStatus {
    let mut tape = Tape::unary(input);
    let mut head: i64 = 0;
    let mut state: u32 = 0;
    for step in 1..=budget {
        let sym = tape.read(head) as usize;
        match machine.actions[state as usize][sym] {
            Action::Halt => return HaltStatus::Halted { step },
            Action::Step { write, mv, next } => {
                tape.write(head, write);
                head += match mv {
                    Move::Left => -1,
                    Move::Right => 1,
                };
                state = next;
            }
        }
    }
    HaltStatus::Running
}

/// Simulates the machine with index `m` on input `m`.
pub fn halts_in(m: u64, budget: u64) -> HaltStatus {
    simulate(&decode(&Nat::from(m)), m, budget)
}

#[derive(Debug, thiserror::Error)]
#[error("machine table parse error at line {line}: {message}")]
pub struct MachineParseError {
    pub line: usize,
    pub message: String,
}

/// Parses the textual transition-table format:
///
/// ```text
/// states: 2
/// 0 0 -> 1 1 R     # from state 0 reading 0: go to state 1, write 1, move right
/// 0 1 -> halt
/// 1 0 -> 0 0 L
/// 1 1 -> halt
/// ```
///
/// All `2 * states` entries must be present exactly once; `#` starts a
/// comment.
pub fn parse_machine_text(text: &str) -> Result<Machine, MachineParseError> {
    let err = |line: usize, message: &str| MachineParseError {
        line,
        message: message.to_string(),
    };
    let mut states: Option<u32> = None;
    let mut entries: Vec<Option<Action>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("states:") {
            if states.is_some() {
                return Err(err(line_no, "duplicate states declaration"));
            }
            let s: u32 = rest
                .trim()
                .parse()
                .map_err(|_| err(line_no, "bad state count"))?;
            if s == 0 || s > MAX_STATES {
                return Err(err(line_no, "state count out of range"));
            }
            states = Some(s);
            entries = vec![None; (2 * s) as usize];
            continue;
        }
        let s = states.ok_or_else(|| err(line_no, "states: declaration must come first"))?;
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| err(line_no, "expected `state symbol -> action`"))?;
        let mut lhs_it = lhs.split_whitespace();
        let q: u32 = lhs_it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(line_no, "bad state"))?;
        let sym: u8 = lhs_it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err(line_no, "bad symbol"))?;
        if lhs_it.next().is_some() || q >= s || sym > 1 {
            return Err(err(line_no, "bad left-hand side"));
        }
        let rhs = rhs.trim();
        let action = if rhs.eq_ignore_ascii_case("halt") {
            Action::Halt
        } else {
            let mut it = rhs.split_whitespace();
            let next: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err(line_no, "bad next state"))?;
            let write: u8 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err(line_no, "bad written symbol"))?;
            let mv = match it.next() {
                Some("L") | Some("l") => Move::Left,
                Some("R") | Some("r") => Move::Right,
                _ => return Err(err(line_no, "bad move (expected L or R)")),
            };
            if it.next().is_some() || next >= s || write > 1 {
                return Err(err(line_no, "bad action"));
            }
            Action::Step {
                write: write == 1,
                mv,
                next,
            }
        };
        let slot = &mut entries[(2 * q + sym as u32) as usize];
        if slot.is_some() {
            return Err(err(line_no, "duplicate entry"));
        }
        *slot = Some(action);
    }
    let s = states.ok_or_else(|| err(0, "missing states declaration"))?;
    let mut actions = Vec::with_capacity(s as usize);
    for q in 0..s {
        let a0 = entries[(2 * q) as usize]
            .ok_or_else(|| err(0, &format!("missing entry for state {q} symbol 0")))?;
        let a1 = entries[(2 * q + 1) as usize]
            .ok_or_else(|| err(0, &format!("missing entry for state {q} symbol 1")))?;
        actions.push([a0, a1]);
    }
    Ok(Machine { actions })
}

/// Renders a machine in the textual format accepted by
/// [`parse_machine_text`].
pub fn render_machine_text(machine: &Machine) -> String {
    let mut out = format!("states: {}\n", machine.state_count());
    for (q, entry) in machine.actions.iter().enumerate() {
        for (sym, action) in entry.iter().enumerate() {
            match action {
                Action::Halt => out.push_str(&format!("{q} {sym} -> halt\n")),
                Action::Step { write, mv, next } => {
                    let mv = match mv {
                        Move::Left => "L",
                        Move::Right => "R",
                    };
                    out.push_str(&format!("{q} {sym} -> {next} {} {mv}\n", *write as u8));
                }
            }
        }
    }
    out
}
