import { test } from "node:test";
import assert from "node:assert/strict";
import { DesignScheduler } from "../src/scheduler.js";
import { deferred, FakeClock, flush, rng } from "./support.js";

test("continuous drags send at most one request per interval and end on the final state", () => {
  for (let seed = 1; seed <= 200; seed++) {
    const next = rng(seed);
    const clock = new FakeClock();
    const sent: { at: number; req: number }[] = [];
    const s = new DesignScheduler<number, number>({
      send: (req) => {
        sent.push({ at: clock.now(), req });
        return new Promise(() => {});
      },
      apply: () => {},
      clock,
    });
    let t = 0;
    let last = -1;
    const first = next() * 50;
    const events = 5 + Math.floor(next() * 60);
    t = first;
    for (let k = 0; k < events; k++) {
      clock.advanceTo(t);
      s.schedule(k);
      last = k;
      t += next() < 0.1 ? 150 + next() * 300 : next() * 40;
    }
    clock.advanceTo(t + 1000);
    assert.ok(sent.length >= 1);
    assert.ok(sent[0].at >= first + 100, `seed ${seed}: first send too early`);
    for (let i = 1; i < sent.length; i++) {
      assert.ok(sent[i].at - sent[i - 1].at >= 100, `seed ${seed}: sends ${sent[i - 1].at} and ${sent[i].at}`);
    }
    assert.equal(sent[sent.length - 1].req, last, `seed ${seed}: final state not sent`);
    assert.equal(new Set(sent.map((x) => x.req)).size, sent.length);
  }
});

test("out-of-order responses never overwrite newer ones", async () => {
  for (let seed = 1; seed <= 100; seed++) {
    const next = rng(seed);
    const clock = new FakeClock();
    const inflight: { seq: number; done: ReturnType<typeof deferred<number>> }[] = [];
    const applied: number[] = [];
    const s = new DesignScheduler<number, number>({
      send: (req, seq) => {
        const done = deferred<number>();
        inflight.push({ seq, done });
        assert.equal(req, seq);
        return done.promise;
      },
      apply: (res, seq) => {
        assert.equal(res, seq);
        applied.push(seq);
      },
      clock,
    });
    const count = 2 + Math.floor(next() * 8);
    for (let k = 1; k <= count; k++) {
      s.schedule(k);
      clock.advanceTo(clock.now() + 100);
    }
    assert.equal(inflight.length, count);
    assert.equal(s.pending, true);
    const order = inflight.slice();
    for (let i = order.length - 1; i > 0; i--) {
      const j = Math.floor(next() * (i + 1));
      [order[i], order[j]] = [order[j], order[i]];
    }
    for (const { seq, done } of order) {
      done.resolve(seq);
      await flush();
    }
    for (let i = 1; i < applied.length; i++) assert.ok(applied[i] > applied[i - 1]);
    assert.equal(applied[applied.length - 1], count);
    assert.equal(s.lastApplied, count);
    assert.equal(s.discarded, count - applied.length);
    assert.equal(s.pending, false);
  }
});

test("a failed request is reported unless a newer answer arrived", async () => {
  const clock = new FakeClock();
  const calls: ReturnType<typeof deferred<string>>[] = [];
  const failed: number[] = [];
  const applied: number[] = [];
  const s = new DesignScheduler<string, string>({
    send: () => {
      const d = deferred<string>();
      calls.push(d);
      return d.promise;
    },
    apply: (_, seq) => applied.push(seq),
    fail: (_, seq) => failed.push(seq),
    clock,
  });
  s.schedule("a");
  clock.advanceTo(100);
  s.schedule("b");
  clock.advanceTo(200);
  calls[1].resolve("ok");
  await flush();
  calls[0].reject(new Error("late failure"));
  await flush();
  assert.deepEqual(applied, [2]);
  assert.deepEqual(failed, []);
  s.schedule("c");
  clock.advanceTo(300);
  calls[2].reject(new Error("down"));
  await flush();
  assert.deepEqual(failed, [3]);
});

test("cancel drops a scheduled change", () => {
  const clock = new FakeClock();
  let sends = 0;
  const s = new DesignScheduler<number, number>({ send: () => (sends++, new Promise(() => {})), apply: () => {}, clock });
  s.schedule(1);
  s.cancel();
  clock.advanceTo(1000);
  assert.equal(sends, 0);
  assert.equal(s.pending, false);
});
