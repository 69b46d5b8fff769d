/**
 * Typed client for the annotation service. The UI talks to exactly four
 * endpoints: POST /sessions, GET /sessions/{id}/next,
 * POST /sessions/{id}/judgments, and (for organizers) GET /agreement.
 */

export interface SessionInfo {
  session_id: string;
  token: string;
  total_items: number;
  completed: number;
}

export interface ItemView {
  done: false;
  item_id: string;
  text: string;
  target_match_applies: boolean;
  position: number;
  total_items: number;
}

export interface SessionDone {
  done: true;
  completed: number;
  total_items: number;
}

export type NextResponse = ItemView | SessionDone;

export interface Judgment {
  item_id: string;
  hateful: boolean;
  realistic: boolean;
  target_match?: boolean;
}

export interface SubmitResult {
  accepted: boolean;
  duplicate: boolean;
}

/** Server said no (4xx/5xx), as opposed to the network being unreachable. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function parseOrThrow<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === 'string') detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class AnnotationApi {
  constructor(private readonly baseUrl: string = '') {}

  async createSession(annotatorId: string): Promise<SessionInfo> {
    const response = await fetch(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ annotator_id: annotatorId }),
    });
    return parseOrThrow<SessionInfo>(response);
  }

  async fetchNext(session: SessionInfo): Promise<NextResponse> {
    const response = await fetch(
      `${this.baseUrl}/sessions/${session.session_id}/next`,
      { headers: { 'X-Session-Token': session.token } },
    );
    return parseOrThrow<NextResponse>(response);
  }

  async submitJudgment(
    session: SessionInfo,
    judgment: Judgment,
  ): Promise<SubmitResult> {
    const response = await fetch(
      `${this.baseUrl}/sessions/${session.session_id}/judgments`,
      {
        method: 'POST',
        headers: {
          'Content-Type': 'application/json',
          'X-Session-Token': session.token,
        },
        body: JSON.stringify(judgment),
      },
    );
    return parseOrThrow<SubmitResult>(response);
  }
}
