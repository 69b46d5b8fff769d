/**
 * Single-page annotation flow: content warning -> annotator sign-in -> one
 * item at a time with three binary judgments, driven by keyboard or mouse.
 */

import { AnnotationApi } from './api.js';
import { Answers, SessionController } from './session.js';

const api = new AnnotationApi('');
let controller: SessionController | null = null;
let answers: Answers = {};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function show(id: string): void {
  for (const section of document.querySelectorAll<HTMLElement>('.screen')) {
    section.hidden = section.id !== id;
  }
}

function setStatus(message: string): void {
  el('status').textContent = message;
}

function renderChoice(name: keyof Answers): void {
  const yes = el<HTMLButtonElement>(`${name}-yes`);
  const no = el<HTMLButtonElement>(`${name}-no`);
  yes.classList.toggle('selected', answers[name] === true);
  no.classList.toggle('selected', answers[name] === false);
}

function renderItem(): void {
  if (!controller) return;
  if (controller.state === 'done') {
    el('final-count').textContent = String(controller.completed);
    show('screen-finished');
    return;
  }
  const item = controller.current;
  if (!item) return;
  show('screen-item');
  el('item-text').textContent = item.text;
  el('progress').textContent = `${item.position} of ${item.total_items}`;
  el('target-row').hidden = !item.target_match_applies;
  for (const name of ['hateful', 'targetMatch', 'realistic'] as const) {
    renderChoice(name);
  }
  el<HTMLButtonElement>('submit').disabled = !controller.canSubmit(answers);
}

function setAnswer(name: keyof Answers, value: boolean): void {
  if (!controller || controller.state !== 'item') return;
  if (name === 'targetMatch' && !controller.current?.target_match_applies) return;
  answers[name] = value;
  renderItem();
}

async function submit(): Promise<void> {
  if (!controller || !controller.canSubmit(answers)) return;
  el<HTMLButtonElement>('submit').disabled = true;
  const outcome = await controller.submit(answers);
  if (outcome === 'accepted') {
    answers = {};
    setStatus('');
    renderItem();
  } else if (outcome === 'rejected') {
    setStatus(`submission rejected: ${controller.lastRejection}; please re-judge`);
    renderItem();
  } else {
    setStatus('offline: judgment saved, retrying...');
    void retryLoop();
  }
}

async function retryLoop(): Promise<void> {
  if (!controller) return;
  while (controller.pendingRetry) {
    await new Promise((resolve) => setTimeout(resolve, 2000));
    try {
      const outcome = await controller.retryPending();
      if (outcome === 'accepted') {
        answers = {};
        setStatus('');
        renderItem();
        return;
      }
      if (outcome === 'rejected') {
        setStatus(`submission rejected: ${controller.lastRejection}; please re-judge`);
        renderItem();
        return;
      }
    } catch {
      // still offline; keep trying
    }
  }
}

async function begin(): Promise<void> {
  const annotatorId = el<HTMLInputElement>('annotator-id').value.trim();
  if (!annotatorId) {
    setStatus('enter your annotator id');
    return;
  }
  controller = new SessionController(api, annotatorId);
  try {
    await controller.start();
  } catch (error) {
    setStatus(`could not start session: ${(error as Error).message}`);
    return;
  }
  answers = {};
  renderItem();
}

const KEY_BINDINGS: Record<string, [keyof Answers, boolean]> = {
  '1': ['hateful', true],
  '2': ['hateful', false],
  '3': ['targetMatch', true],
  '4': ['targetMatch', false],
  '5': ['realistic', true],
  '6': ['realistic', false],
};

function wireEvents(): void {
  el('acknowledge').addEventListener('click', () => show('screen-signin'));
  el('begin').addEventListener('click', () => void begin());
  el<HTMLInputElement>('annotator-id').addEventListener('keydown', (event) => {
    if (event.key === 'Enter') void begin();
  });
  for (const [name, suffix, value] of [
    ['hateful', 'yes', true],
    ['hateful', 'no', false],
    ['targetMatch', 'yes', true],
    ['targetMatch', 'no', false],
    ['realistic', 'yes', true],
    ['realistic', 'no', false],
  ] as [keyof Answers, string, boolean][]) {
    el(`${name}-${suffix}`).addEventListener('click', () => setAnswer(name, value));
  }
  el('submit').addEventListener('click', () => void submit());
  document.addEventListener('keydown', (event) => {
    if ((event.target as HTMLElement)?.tagName === 'INPUT') return;
    const binding = KEY_BINDINGS[event.key];
    if (binding) setAnswer(binding[0], binding[1]);
    if (event.key === 'Enter') void submit();
  });
}

document.addEventListener('DOMContentLoaded', () => {
  wireEvents();
  show('screen-warning');
});
