/**
 * End-to-end: spawn the Python annotation service, run a scripted session
 * through the same client code the browser uses, and check the round trip:
 * exported judgments equal the submissions, and a fully-agreeing
 * two-annotator overlap yields alpha = 1.0 on every dimension.
 */

import { ChildProcess, spawn } from 'node:child_process';
import { mkdtempSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { AnnotationApi, Judgment } from '../src/api.js';
import { Answers, SessionController } from '../src/session.js';

const PORT = 18000 + (process.pid % 2000);
const BASE = `http://127.0.0.1:${PORT}`;

const TARGETS = ['race', 'religion', 'origin', 'gender', 'sexuality', 'age', 'disability'];
const LABELS = ['hateful', 'non_hateful'];

function generatedCorpus(): string {
  const lines: string[] = [];
  let i = 0;
  const push = (label: string, target: string | null) => {
    lines.push(
      JSON.stringify({
        id: `gen${String(i).padStart(4, '0')}`,
        text: `synthetic ${label} sample ${i}${target ? ` about ${target}` : ''}`,
        label,
        targets: target ? [target] : [],
        provenance: 'generated',
        source_meta: {
          backend: 'mock',
          mode: 'few_shot',
          intended_label: label,
          intended_target: target,
        },
      }),
    );
    i += 1;
  };
  for (const label of LABELS) {
    for (const target of TARGETS) {
      for (let k = 0; k < 3; k += 1) push(label, target);
    }
    for (let k = 0; k < 10; k += 1) push(label, null);
  }
  return lines.join('\n') + '\n';
}

/** Deterministic per-item vote so both annotators agree exactly. */
function voteFor(itemId: string): boolean {
  let sum = 0;
  for (const ch of itemId) sum += ch.charCodeAt(0);
  return sum % 2 === 0;
}

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 50; attempt += 1) {
    try {
      const response = await fetch(`${BASE}/agreement`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error('annotation server did not come up');
}

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), 'annotation-e2e-'));
  const corpusPath = join(dir, 'generated.jsonl');
  writeFileSync(corpusPath, generatedCorpus());
  server = spawn(
    'targetaug',
    [
      'serve', corpusPath,
      '--annotators', 'alice,bob',
      '--items-per-setup', '5',
      '--overlap', '0.4',
      '--seed', '11',
      '--data-dir', join(dir, 'data'),
      '--port', String(PORT),
      '--host', '127.0.0.1',
    ],
    { stdio: 'ignore' },
  );
  await waitForServer();
}, 30_000);

afterAll(() => {
  server?.kill();
});

interface Submission extends Judgment {
  annotator_id: string;
}

async function runScriptedSession(annotatorId: string): Promise<Submission[]> {
  const api = new AnnotationApi(BASE);
  const controller = new SessionController(api, annotatorId);
  await controller.start();
  const submissions: Submission[] = [];
  while (controller.state === 'item' && controller.current) {
    const item = controller.current;
    const vote = voteFor(item.item_id);
    const answers: Answers = { hateful: vote, realistic: !vote };
    if (item.target_match_applies) answers.targetMatch = vote;
    const record: Submission = {
      annotator_id: annotatorId,
      item_id: item.item_id,
      hateful: vote,
      realistic: !vote,
    };
    if (item.target_match_applies) record.target_match = vote;
    const outcome = await controller.submit(answers);
    expect(outcome).toBe('accepted');
    submissions.push(record);
  }
  expect(controller.state).toBe('done');
  return submissions;
}

describe('annotation round trip against the live service', () => {
  it('answers 10 mixed items, export equals submissions, overlap agreement is 1.0', async () => {
    const alice = await runScriptedSession('alice');
    expect(alice).toHaveLength(10);
    // mixed target-conditioned and unconditioned items
    expect(alice.some((s) => 'target_match' in s)).toBe(true);
    expect(alice.some((s) => !('target_match' in s))).toBe(true);

    const bob = await runScriptedSession('bob');
    const submissions = [...alice, ...bob];

    const exportText = await (await fetch(`${BASE}/export`)).text();
    const exported = exportText
      .trim()
      .split('\n')
      .map((line) => JSON.parse(line));
    const key = (r: { item_id: string; annotator_id: string }) =>
      `${r.item_id}|${r.annotator_id}`;
    expect(new Set(exported.map(key))).toEqual(new Set(submissions.map(key)));
    for (const record of exported) {
      const mine = submissions.find((s) => key(s) === key(record));
      expect(mine).toBeDefined();
      expect(record.hateful).toBe(mine!.hateful);
      expect(record.realistic).toBe(mine!.realistic);
      expect(record.target_match ?? null).toBe(mine!.target_match ?? null);
    }

    const agreement = await (await fetch(`${BASE}/agreement`)).json();
    expect(agreement.n_overlap_items).toBeGreaterThanOrEqual(2);
    expect(agreement.alpha.hateful).toBe(1.0);
    expect(agreement.alpha.realistic).toBe(1.0);
    expect(agreement.alpha.target_match).toBe(1.0);
  }, 60_000);
});
