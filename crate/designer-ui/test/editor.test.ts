import { test } from "node:test";
import assert from "node:assert/strict";
import { createEditor, dragControlPoint, releaseControlPoint, seamArea } from "../src/editor.js";

const lift = { u_bar: "u - v", v_bar: "u + v" };
const square = [
  { u: 1, v: 1 },
  { u: 1, v: 2 },
  { u: 2, v: 2 },
  { u: 2, v: 1 },
];

test("the editor closes the net", () => {
  const s = createEditor(square, lift);
  assert.equal(s.net.length, 5);
  assert.deepEqual(s.net[4], s.net[0]);
});

test("dragging p0 moves pn identically", () => {
  let s = createEditor(square, lift);
  s = dragControlPoint(s, 0, { u: 1.5, v: 0.5 });
  assert.deepEqual(s.net[0], { u: 1.5, v: 0.5 });
  assert.deepEqual(s.net[4], s.net[0]);
  s = dragControlPoint(s, 4, { u: 0.7, v: 0.9 });
  assert.deepEqual(s.net[0], { u: 0.7, v: 0.9 });
  assert.equal(s.selection, 4);
});

test("drags are clamped to the domain rectangle", () => {
  let s = createEditor(square, lift);
  s = dragControlPoint(s, 2, { u: 4, v: -1 });
  assert.deepEqual(s.net[2], { u: Math.PI, v: 0 });
  assert.equal(s.clamped, true);
  s = dragControlPoint(s, 2, { u: 2, v: 2 });
  assert.equal(s.clamped, false);
  assert.throws(() => dragControlPoint(s, 5, { u: 1, v: 1 }), RangeError);
  assert.throws(() => dragControlPoint(s, -1, { u: 1, v: 1 }), RangeError);
});

test("C1 snap projects the opposite neighbour onto the p1-p0 line", () => {
  let s = createEditor(square, lift, true);
  s = dragControlPoint(s, 1, { u: 1.3, v: 1.8 });
  assert.notEqual(Math.abs(seamArea(s.net)), 0);
  s = releaseControlPoint(s, 1);
  assert.ok(Math.abs(seamArea(s.net)) < 1e-12);
  assert.deepEqual(s.net[1], { u: 1.3, v: 1.8 });

  s = dragControlPoint(s, 3, { u: 2.2, v: 0.6 });
  s = releaseControlPoint(s, 3);
  assert.ok(Math.abs(seamArea(s.net)) < 1e-12);
  assert.deepEqual(s.net[3], { u: 2.2, v: 0.6 });
});

test("without snap, release leaves the net alone", () => {
  let s = createEditor(square, lift);
  s = dragControlPoint(s, 1, { u: 1.3, v: 1.8 });
  const before = s.net;
  s = releaseControlPoint(s, 1);
  assert.deepEqual(s.net, before);
  assert.equal(s.selection, null);
});
