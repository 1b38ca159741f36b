import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { AssignmentDoc, AstNode, Session } from "../src/index.js";

const GOLDEN = fileURLToPath(new URL("../../tests/corpus/golden/", import.meta.url));

const simpleQuery = readFileSync(join(GOLDEN, "single_network.vnnlib"), "utf8");
const equalPairQuery = readFileSync(join(GOLDEN, "equal_pair.vnnlib"), "utf8");

describe("Session.parse", () => {
  it("returns an AST handle for a good query", () => {
    const { exitCode, report } = new Session().parse(simpleQuery);
    expect(exitCode).toBe(0);
    expect(report.status).toBe("ok");
    if (report.status === "ok") {
      const ast = report.ast as AstNode;
      expect(ast.kind).toBe("query");
      expect((ast.networks as AstNode[]).length).toBe(1);
      expect((ast.asserts as AstNode[]).length).toBe(3);
    }
  });

  it("reports a structured error at position 0 for empty input", () => {
    const { exitCode, report } = new Session().parse("");
    expect(exitCode).toBe(3);
    expect(report.status).toBe("error");
    if (report.status === "error") {
      expect(report.error.kind).toBe("parse");
      expect(report.error.position).toBe(0);
    }
  });

  it("exposes equivalence statements in the AST", () => {
    const { report } = new Session().parse(equalPairQuery);
    if (report.status === "ok") {
      const nets = (report.ast as AstNode).networks as AstNode[];
      expect((nets[1].equiv as AstNode).kind).toBe("equal-to");
      expect((nets[1].equiv as AstNode).target).toBe("f");
    } else {
      throw new Error("expected ok");
    }
  });
});

describe("Session.eval", () => {
  const zeroAssertionQuery = readFileSync(
    join(GOLDEN, "teacher_student.vnnlib"),
    "utf8",
  );

  it("an empty assertion list is satisfied", () => {
    const session = new Session()
      .bindModel("teacher", join(GOLDEN, "teacher.nn.json"))
      .bindModel("student", join(GOLDEN, "student.nn.json"));
    const assignment = JSON.parse(
      readFileSync(join(GOLDEN, "teacher_student_x.json"), "utf8"),
    ) as AssignmentDoc;
    const { exitCode, report } = session.eval(zeroAssertionQuery, assignment);
    expect(exitCode).toBe(0);
    expect(report.status).toBe("satisfied");
  });

  it("surfaces typed error codes", () => {
    const session = new Session().bindModel(
      "myNetwork",
      join(GOLDEN, "single_network.nn.json"),
    );
    const { exitCode, report } = session.eval(simpleQuery, {});
    expect(exitCode).toBe(2);
    if (report.status === "error") {
      expect(report.error.code).toBe("AssignmentMissing");
    } else {
      throw new Error("expected error");
    }
  });
});

describe("theory isolation between sessions", () => {
  const realQuery = readFileSync(join(GOLDEN, "divergence_real.vnnlib"), "utf8");
  const floatQuery = readFileSync(join(GOLDEN, "divergence_float.vnnlib"), "utf8");
  const model = join(GOLDEN, "divergence.nn.json");

  it("float and real sessions disagree on the divergence witness", () => {
    const floatSession = new Session().bindModel("adder", model);
    const realSession = new Session({ real: true }).bindModel("adder", model);
    const floatVerdict = floatSession.eval(floatQuery, {
      X: { dtype: "float32", shape: [1, 1], data: ["1"] },
    });
    const realVerdict = realSession.eval(realQuery, {
      X: { dtype: "real", shape: [1, 1], data: ["1"] },
    });
    expect(floatVerdict.report.status).toBe("violated");
    expect(realVerdict.report.status).toBe("satisfied");
    // sessions do not leak state into each other: re-running the float
    // session still gives the float verdict
    const again = floatSession.eval(floatQuery, {
      X: { dtype: "float32", shape: [1, 1], data: ["1"] },
    });
    expect(again.report.status).toBe("violated");
  });

  it("a real session rejects float element types", () => {
    const realSession = new Session({ real: true });
    const { report } = realSession.check(simpleQuery);
    expect(report.status).toBe("error");
    if (report.status === "error") {
      expect(report.error.code).toBe("UnknownElementType");
    }
  });
});

describe("model handles", () => {
  it("are immutable once bound", () => {
    const session = new Session().bindModel("n", "a.nn.json");
    expect(() => session.bindModel("n", "b.nn.json")).toThrow(/already bound/);
  });
});
