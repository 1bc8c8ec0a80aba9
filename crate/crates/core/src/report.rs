//! Small result-reporting structure shared by the verification routines.

use serde_json::{json, Value};

/// Outcome of one verification routine: pass/fail plus explicit failure
/// witnesses and a count of checked cells (grid points or trials).
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub cells: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> CheckReport {
        CheckReport {
            name: name.into(),
            pass: true,
            cells: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn cell(&mut self) {
        self.cells += 1;
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.pass = false;
        self.failures.push(witness.into());
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cells += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.pass &= other.pass;
        self.cells += other.cells;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "pass": self.pass,
            "cells": self.cells,
            "failures": self.failures,
            "notes": self.notes,
        })
    }
}
