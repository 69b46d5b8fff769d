/**
 * Session flow state machine: fetch-next -> answer -> submit, looped until the
 * queue is exhausted. Network failures keep the judgment locally and retry it;
 * a rejected submission re-presents the same item.
 */

import {
  AnnotationApi,
  ApiError,
  ItemView,
  Judgment,
  SessionInfo,
} from './api.js';

export interface Answers {
  hateful?: boolean;
  targetMatch?: boolean;
  realistic?: boolean;
}

export type SubmitOutcome = 'accepted' | 'rejected' | 'queued-for-retry';

export type SessionState = 'idle' | 'item' | 'done';

export class SessionController {
  state: SessionState = 'idle';
  current: ItemView | null = null;
  completed = 0;
  totalItems = 0;
  /** Judgment retained after a network failure, waiting for a retry. */
  pendingRetry: Judgment | null = null;
  lastRejection: string | null = null;

  private session: SessionInfo | null = null;

  constructor(
    private readonly api: AnnotationApi,
    readonly annotatorId: string,
  ) {}

  async start(): Promise<void> {
    this.session = await this.api.createSession(this.annotatorId);
    this.totalItems = this.session.total_items;
    this.completed = this.session.completed;
    await this.advance();
  }

  /** Fetch the next unanswered item; the server is the source of truth. */
  async advance(): Promise<void> {
    if (!this.session) throw new Error('session not started');
    const next = await this.api.fetchNext(this.session);
    if (next.done) {
      this.state = 'done';
      this.current = null;
      this.completed = next.completed;
    } else {
      this.state = 'item';
      this.current = next;
      this.completed = next.position - 1;
      this.totalItems = next.total_items;
    }
  }

  /** Submission stays disabled until every applicable dimension is answered. */
  canSubmit(answers: Answers): boolean {
    if (this.state !== 'item' || !this.current) return false;
    if (answers.hateful === undefined || answers.realistic === undefined) {
      return false;
    }
    if (this.current.target_match_applies && answers.targetMatch === undefined) {
      return false;
    }
    return true;
  }

  private buildJudgment(item: ItemView, answers: Answers): Judgment {
    const judgment: Judgment = {
      item_id: item.item_id,
      hateful: answers.hateful!,
      realistic: answers.realistic!,
    };
    if (item.target_match_applies) {
      judgment.target_match = answers.targetMatch!;
    }
    return judgment;
  }

  async submit(answers: Answers): Promise<SubmitOutcome> {
    if (!this.session || !this.current) throw new Error('no item to judge');
    if (!this.canSubmit(answers)) {
      throw new Error('all applicable dimensions must be answered');
    }
    return this.send(this.buildJudgment(this.current, answers));
  }

  /** Retry a judgment kept after a network failure. */
  async retryPending(): Promise<SubmitOutcome> {
    if (!this.pendingRetry) throw new Error('nothing to retry');
    return this.send(this.pendingRetry);
  }

  private async send(judgment: Judgment): Promise<SubmitOutcome> {
    if (!this.session) throw new Error('session not started');
    this.lastRejection = null;
    try {
      await this.api.submitJudgment(this.session, judgment);
    } catch (error) {
      if (error instanceof ApiError) {
        // the server refused it; re-present the item
        this.pendingRetry = null;
        this.lastRejection = error.message;
        return 'rejected';
      }
      // network failure: keep the judgment and let the caller retry
      this.pendingRetry = judgment;
      return 'queued-for-retry';
    }
    this.pendingRetry = null;
    await this.advance();
    return 'accepted';
  }
}
