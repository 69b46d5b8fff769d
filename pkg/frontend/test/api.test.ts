import { afterEach, describe, expect, it, vi } from 'vitest';

import { AnnotationApi, ApiError, SessionInfo } from '../src/api.js';

const SESSION: SessionInfo = {
  session_id: 'abc',
  token: 'tok',
  total_items: 3,
  completed: 0,
};

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

describe('AnnotationApi', () => {
  afterEach(() => {
    vi.restoreAllMocks();
  });

  it('only ever calls the documented endpoints', async () => {
    const urls: string[] = [];
    vi.stubGlobal(
      'fetch',
      vi.fn(async (url: string) => {
        urls.push(String(url));
        if (String(url).endsWith('/sessions')) return jsonResponse(SESSION);
        if (String(url).includes('/next')) {
          return jsonResponse({ done: true, completed: 0, total_items: 0 });
        }
        return jsonResponse({ accepted: true, duplicate: false });
      }),
    );
    const api = new AnnotationApi('http://host');
    const session = await api.createSession('a1');
    await api.fetchNext(session);
    await api.submitJudgment(session, { item_id: 'i', hateful: true, realistic: true });
    expect(urls).toEqual([
      'http://host/sessions',
      'http://host/sessions/abc/next',
      'http://host/sessions/abc/judgments',
    ]);
  });

  it('sends the session token header', async () => {
    const headers: Record<string, string>[] = [];
    vi.stubGlobal(
      'fetch',
      vi.fn(async (_url: string, init?: RequestInit) => {
        headers.push((init?.headers ?? {}) as Record<string, string>);
        return jsonResponse({ done: true, completed: 0, total_items: 0 });
      }),
    );
    await new AnnotationApi('').fetchNext(SESSION);
    expect(headers[0]['X-Session-Token']).toBe('tok');
  });

  it('raises ApiError with the server detail on 4xx', async () => {
    vi.stubGlobal(
      'fetch',
      vi.fn(async () => jsonResponse({ detail: 'item not served' }, 409)),
    );
    const api = new AnnotationApi('');
    await expect(
      api.submitJudgment(SESSION, { item_id: 'i', hateful: true, realistic: true }),
    ).rejects.toMatchObject({ name: 'ApiError', status: 409, message: 'item not served' });
  });

  it('lets network failures propagate as non-ApiError', async () => {
    vi.stubGlobal(
      'fetch',
      vi.fn(async () => {
        throw new TypeError('fetch failed');
      }),
    );
    const api = new AnnotationApi('');
    await expect(api.createSession('a1')).rejects.toThrow(TypeError);
    await expect(api.createSession('a1')).rejects.not.toBeInstanceOf(ApiError);
  });
});
