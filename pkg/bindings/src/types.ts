/** Report shapes mirroring the CLI's `--json` output exactly. */

export type TypeErrorCode =
  | "DuplicateName"
  | "UnknownNetwork"
  | "EquivChain"
  | "ShapeMismatch"
  | "ElementTypeMismatch"
  | "UntypableComparison"
  | "MixedTypes"
  | "BadConstant"
  | "UnknownVariable"
  | "RankMismatch"
  | "IndexOutOfBounds"
  | "ModelTypeMismatch"
  | "ModelNotEqual"
  | "ModelNotIsomorphic"
  | "HiddenNodeMissing"
  | "AssignmentMissing"
  | "AssignmentTypeMismatch"
  | "UnknownElementType";

export type ErrorKind = "parse" | "type" | "format" | "io";

export interface ReportError {
  kind: ErrorKind;
  message: string;
  /** type errors only */
  code?: TypeErrorCode;
  span?: [number, number];
  /** parse errors only */
  position?: number;
  line?: number;
  column?: number;
  /** format/io errors only */
  path?: string;
}

/** One AST node of the `--ast-json` tree: a kind tag, a span, children. */
export interface AstNode {
  kind: string;
  span: [number, number];
  [key: string]: unknown;
}

/** A serialized tensor, as found in assignment files and witnesses. */
export interface TensorJson {
  dtype: string;
  shape: number[];
  data: string[];
}

/** Maps each declared input variable to its tensor. */
export type AssignmentDoc = Record<string, TensorJson>;

export interface ErrorReport {
  command: string;
  status: "error";
  error: ReportError;
}

export interface ParseOkReport {
  command: "parse";
  status: "ok";
  ast?: AstNode;
}

export interface CheckOkReport {
  command: "check";
  status: "ok";
}

export interface EvalReport {
  command: "eval";
  status: "satisfied" | "violated";
  assertions: { span: [number, number]; holds: boolean }[];
}

export interface SearchFoundReport {
  command: "search";
  status: "found";
  witness: AssignmentDoc;
}

export interface SearchUnknownReport {
  command: "search";
  status: "unknown";
  samples: number;
}

export type Report =
  | ErrorReport
  | ParseOkReport
  | CheckOkReport
  | EvalReport
  | SearchFoundReport
  | SearchUnknownReport;

/** The CLI's exit-code contract. */
export const EXIT_CODES = {
  ok: 0,
  violatedOrUnknown: 1,
  typeError: 2,
  parseError: 3,
  formatOrIoError: 4,
} as const;

/** A report paired with the process exit code that produced it. */
export interface Outcome<R extends Report = Report> {
  exitCode: number;
  report: R;
}
