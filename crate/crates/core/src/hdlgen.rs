//! VHDL text generator for the operand-folding multiplier.
//!
//! The output follows the behavioral, process-based layout of the reference
//! listing: one combinational process walking the four phases, each marked
//! with its step label. Widths are computed here and emitted as literals.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HdlError {
    #[error("k must satisfy 1 <= k <= 8, got {0}")]
    Degree(u32),
    #[error("m must satisfy 4 <= m <= 4096, got {0}")]
    Width(usize),
    #[error("{0:?} is not a valid VHDL identifier")]
    Identifier(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dialect {
    #[default]
    Vhdl,
}

impl Dialect {
    pub fn extension(self) -> &'static str {
        match self {
            Dialect::Vhdl => "vhd",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HdlConfig {
    pub m: usize,
    pub k: u32,
    pub entity_name: String,
}

impl HdlConfig {
    pub fn new(m: usize, k: u32) -> Self {
        Self {
            m,
            k,
            entity_name: "Mult_Entity".to_string(),
        }
    }

    pub fn with_entity_name(mut self, name: impl Into<String>) -> Self {
        self.entity_name = name.into();
        self
    }

    pub fn validate(&self) -> Result<(), HdlError> {
        if !(1..=8).contains(&self.k) {
            return Err(HdlError::Degree(self.k));
        }
        if !(4..=4096).contains(&self.m) {
            return Err(HdlError::Width(self.m));
        }
        if !is_vhdl_identifier(&self.entity_name) {
            return Err(HdlError::Identifier(self.entity_name.clone()));
        }
        Ok(())
    }

    /// Part width `⌈m/k⌉`.
    pub fn n(&self) -> usize {
        self.m.div_ceil(self.k as usize)
    }

    /// Zero bits at the top of `B_k`.
    pub fn padding(&self) -> usize {
        self.n() * self.k as usize - self.m
    }

    /// Accumulator width `m + n`.
    pub fn accumulator_width(&self) -> usize {
        self.m + self.n()
    }

    pub fn output_width(&self) -> usize {
        2 * self.m
    }
}

const RESERVED: &[&str] = &[
    "abs",
    "access",
    "after",
    "alias",
    "all",
    "and",
    "architecture",
    "array",
    "assert",
    "attribute",
    "begin",
    "block",
    "body",
    "buffer",
    "bus",
    "case",
    "component",
    "configuration",
    "constant",
    "disconnect",
    "downto",
    "else",
    "elsif",
    "end",
    "entity",
    "exit",
    "file",
    "for",
    "function",
    "generate",
    "generic",
    "group",
    "guarded",
    "if",
    "impure",
    "in",
    "inertial",
    "inout",
    "is",
    "label",
    "library",
    "linkage",
    "literal",
    "loop",
    "map",
    "mod",
    "nand",
    "new",
    "next",
    "nor",
    "not",
    "null",
    "of",
    "on",
    "open",
    "or",
    "others",
    "out",
    "package",
    "port",
    "postponed",
    "procedure",
    "process",
    "pure",
    "range",
    "record",
    "register",
    "reject",
    "rem",
    "report",
    "return",
    "rol",
    "ror",
    "select",
    "severity",
    "signal",
    "shared",
    "sla",
    "sll",
    "sra",
    "srl",
    "subtype",
    "then",
    "to",
    "transport",
    "type",
    "unaffected",
    "units",
    "until",
    "use",
    "variable",
    "wait",
    "when",
    "while",
    "with",
    "xnor",
    "xor",
];

/// Basic VHDL identifier: a letter, then letters, digits, and single
/// non-trailing underscores; not a reserved word.
pub fn is_vhdl_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    first.is_ascii_alphabetic()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !s.contains("__")
        && !s.ends_with('_')
        && !RESERVED.contains(&s.to_ascii_lowercase().as_str())
}

pub const STEP_LABELS: [&str; 13] = [
    "1", "2-1", "2-2", "2-3", "2-4", "3-1", "3-2", "3-3", "3-4", "4-1", "4-2", "4-3", "4-4",
];

const DEVIATIONS: &[&str] = &[
    "n is the literal ceil(m/k); the listing's m+k-1/k divides before adding.",
    "Working values are process variables; a signal assigned in a loop keeps only its last write.",
    "Multi-bit clears use (others => '0') instead of a one-character \"0\" literal.",
    "B is zero-extended to n*k bits so B_k is padded in its high bits.",
    "Step 4-3 shifts by n bits; the listing shifts by one.",
    "Steps 2-2 and 2-3 carry separate labels.",
    "Port and internal widths are literals derived from m and k.",
];

/// Renders the multiplier for `config`. Identical configs give identical text.
pub fn emit(config: &HdlConfig) -> Result<String, HdlError> {
    config.validate()?;
    let (m, k) = (config.m, config.k);
    let n = config.n();
    let acc = config.accumulator_width();
    let out = config.output_width();
    let input_len = n * k as usize;
    let cells = (1usize << k) - 1;
    let name = &config.entity_name;

    let mut s = String::new();
    let w = &mut s;
    let _ = writeln!(w, "-- Operand-folding accumulate-and-add multiplier");
    let _ = writeln!(
        w,
        "-- m = {m}, k = {k}, n = {n}, padding = {}, accumulator width = {acc}, output width = {out}",
        config.padding()
    );
    let _ = writeln!(w, "--");
    let _ = writeln!(w, "-- Deviations from the reference listing:");
    for (i, d) in DEVIATIONS.iter().enumerate() {
        let _ = writeln!(w, "--   {}. {d}", i + 1);
    }
    let _ = writeln!(w);
    let _ = writeln!(w, "LIBRARY IEEE;");
    let _ = writeln!(w, "USE ieee.std_logic_1164.all;");
    let _ = writeln!(w, "USE ieee.std_logic_unsigned.all;");
    let _ = writeln!(w);
    let _ = writeln!(w, "ENTITY {name} IS");
    let _ = writeln!(w, "    GENERIC(CONSTANT m : NATURAL := {m};");
    let _ = writeln!(w, "            CONSTANT k : NATURAL := {k});");
    let _ = writeln!(w, "    PORT(A : in STD_LOGIC_VECTOR({} DOWNTO 0);", m - 1);
    let _ = writeln!(w, "         B : in STD_LOGIC_VECTOR({} DOWNTO 0);", m - 1);
    let _ = writeln!(w, "         C : out STD_LOGIC_VECTOR({} DOWNTO 0));", out - 1);
    let _ = writeln!(w, "END {name};");
    let _ = writeln!(w);
    let _ = writeln!(w, "ARCHITECTURE Behavioral OF {name} IS");
    let _ = writeln!(w, "    CONSTANT n : NATURAL := {n};");
    let _ = writeln!(w, "    CONSTANT PAD : NATURAL := {};", config.padding());
    let _ = writeln!(w, "    CONSTANT INPUT_LENGTH : NATURAL := {input_len};");
    let _ = writeln!(w, "    CONSTANT C_PARTS_LENGTH : NATURAL := {acc};");
    let _ = writeln!(w, "    CONSTANT OUTPUT_LENGTH : NATURAL := {out};");
    let _ = writeln!(w, "    CONSTANT cx_count : NATURAL := {cells};");
    let _ = writeln!(
        w,
        "    TYPE BX_TYPE IS ARRAY ({k} DOWNTO 1) OF STD_LOGIC_VECTOR({} DOWNTO 0);",
        n - 1
    );
    let _ = writeln!(
        w,
        "    TYPE CX_TYPE IS ARRAY ({cells} DOWNTO 1) OF STD_LOGIC_VECTOR({} DOWNTO 0);",
        acc - 1
    );
    let _ = writeln!(w, "BEGIN");
    let _ = writeln!(w, "Myproc : PROCESS(A, B)");
    let _ = writeln!(w, "    VARIABLE B_EXT : STD_LOGIC_VECTOR({} DOWNTO 0);", input_len - 1);
    let _ = writeln!(w, "    VARIABLE BX : BX_TYPE;");
    let _ = writeln!(w, "    VARIABLE CX : CX_TYPE;");
    let _ = writeln!(w, "    VARIABLE A_TEMP : STD_LOGIC_VECTOR({} DOWNTO 0);", acc - 1);
    let _ = writeln!(w, "    VARIABLE C_TEMP : STD_LOGIC_VECTOR({} DOWNTO 0);", out - 1);
    let _ = writeln!(w, "    VARIABLE B_value : NATURAL;");
    let _ = writeln!(w, "BEGIN");
    let _ = writeln!(w, "    B_EXT := (others => '0');");
    let _ = writeln!(w, "    B_EXT({} DOWNTO 0) := B;", m - 1);
    let _ = writeln!(w, "    FOR i IN 1 TO {k} LOOP");
    let _ = writeln!(w, "        BX(i) := B_EXT(i*{n}-1 DOWNTO (i-1)*{n});");
    let _ = writeln!(w, "    END LOOP;");
    let _ = writeln!(w, "    A_TEMP := (others => '0');");
    let _ = writeln!(w, "    A_TEMP({} DOWNTO 0) := A;", m - 1);
    let _ = writeln!(w);
    let _ = writeln!(w, "--STEP 1");
    let _ = writeln!(w, "    FOR i IN 1 TO {cells} LOOP");
    let _ = writeln!(w, "        CX(i) := (others => '0');");
    let _ = writeln!(w, "    END LOOP;");
    let _ = writeln!(w, "--STEP 2-1");
    let _ = writeln!(w, "    FOR i IN 0 TO {} LOOP", n - 1);
    let _ = writeln!(w, "        B_value := 0;");
    let _ = writeln!(w, "        FOR j IN 1 TO {k} LOOP");
    let _ = writeln!(
        w,
        "            IF BX(j)(i) = '1' THEN B_value := B_value + 2**(j-1); END IF;"
    );
    let _ = writeln!(w, "        END LOOP;");
    let _ = writeln!(w, "--STEP 2-2");
    let _ = writeln!(w, "        IF B_value > 0 THEN");
    let _ = writeln!(w, "--STEP 2-3");
    let _ = writeln!(w, "            CX(B_value) := CX(B_value) + A_TEMP;");
    let _ = writeln!(w, "        END IF;");
    let _ = writeln!(w, "--STEP 2-4");
    let _ = writeln!(w, "        A_TEMP := A_TEMP({} DOWNTO 0) & '0';", acc - 2);
    let _ = writeln!(w, "    END LOOP;");
    let _ = writeln!(w);
    let _ = writeln!(w, "--STEP 3-1");
    let _ = writeln!(w, "    FOR i IN {k} DOWNTO 1 LOOP");
    let _ = writeln!(w, "--STEP 3-2");
    let _ = writeln!(w, "        FOR j IN 1 TO 2**(i-1)-1 LOOP");
    let _ = writeln!(w, "--STEP 3-3");
    let _ = writeln!(w, "            CX(2**(i-1)) := CX(2**(i-1)) + CX(2**(i-1)+j);");
    let _ = writeln!(w, "--STEP 3-4");
    let _ = writeln!(w, "            CX(j) := CX(j) + CX(2**(i-1)+j);");
    let _ = writeln!(w, "        END LOOP;");
    let _ = writeln!(w, "    END LOOP;");
    let _ = writeln!(w);
    let _ = writeln!(w, "--STEP 4-1");
    let _ = writeln!(w, "    C_TEMP := (others => '0');");
    let _ = writeln!(w, "    C_TEMP({} DOWNTO 0) := CX({});", acc - 1, 1usize << (k - 1));
    let _ = writeln!(w, "--STEP 4-2");
    let _ = writeln!(w, "    FOR i IN {} DOWNTO 1 LOOP", k - 1);
    let _ = writeln!(w, "--STEP 4-3");
    let _ = writeln!(
        w,
        "        C_TEMP := C_TEMP({} DOWNTO 0) & ({} DOWNTO 0 => '0');",
        out - 1 - n,
        n - 1
    );
    let _ = writeln!(w, "--STEP 4-4");
    let _ = writeln!(w, "        C_TEMP := C_TEMP + CX(2**(i-1));");
    let _ = writeln!(w, "    END LOOP;");
    let _ = writeln!(w);
    let _ = writeln!(w, "    C <= C_TEMP;");
    let _ = writeln!(w, "END PROCESS Myproc;");
    let _ = writeln!(w, "END Behavioral;");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label_count(text: &str, label: &str) -> usize {
        let want = format!("--STEP {label}");
        text.lines().filter(|l| l.trim() == want).count()
    }

    #[test]
    fn default_config() {
        let t = emit(&HdlConfig::new(32, 2)).unwrap();
        assert!(t.contains("m : NATURAL := 32"));
        assert!(t.contains("C : out STD_LOGIC_VECTOR(63 DOWNTO 0)"));
        assert!(t.contains("ENTITY Mult_Entity IS"));
        for label in STEP_LABELS {
            assert_eq!(label_count(&t, label), 1, "label {label}");
        }
    }

    #[test]
    fn part_width_literals() {
        let t = emit(&HdlConfig::new(12, 2)).unwrap();
        assert!(t.contains("CONSTANT n : NATURAL := 6;"));
        let t = emit(&HdlConfig::new(10, 3)).unwrap();
        assert!(t.contains("CONSTANT n : NATURAL := 4;"));
        assert!(t.contains("CONSTANT PAD : NATURAL := 2;"));
        assert!(t.contains("CONSTANT C_PARTS_LENGTH : NATURAL := 14;"));
    }

    #[test]
    fn rejects_invalid_configs() {
        assert_eq!(emit(&HdlConfig::new(32, 0)), Err(HdlError::Degree(0)));
        assert_eq!(emit(&HdlConfig::new(32, 9)), Err(HdlError::Degree(9)));
        assert_eq!(emit(&HdlConfig::new(3, 2)), Err(HdlError::Width(3)));
        for bad in ["", "1abc", "a__b", "abc_", "entity", "a-b"] {
            let cfg = HdlConfig::new(32, 2).with_entity_name(bad);
            assert!(matches!(emit(&cfg), Err(HdlError::Identifier(_))), "{bad}");
        }
        assert!(emit(&HdlConfig::new(32, 2).with_entity_name("Fold_Mul5")).is_ok());
    }

    #[test]
    fn degree_one_has_empty_horner_loop() {
        let t = emit(&HdlConfig::new(8, 1)).unwrap();
        assert!(t.contains("FOR i IN 0 DOWNTO 1 LOOP"));
        assert!(t.contains("C_TEMP(15 DOWNTO 0) := CX(1);"));
    }
}
