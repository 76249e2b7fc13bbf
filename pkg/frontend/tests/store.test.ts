import { afterEach, describe, expect, it } from 'vitest';

import { SessionStore } from '../src/store';
import type { LinkRow } from '../src/types';
import { installFakeServer, type FakeServer } from './fakeServer';
import fixture from './fixtures/links.json';

const LINKS = fixture.links as LinkRow[];

let server: FakeServer | null = null;

afterEach(() => {
  server?.restore();
  server = null;
});

function makeStore(): SessionStore {
  return new SessionStore({ baseUrl: '', sessionId: 'sess1', actor: 'alice' });
}

describe('session store', () => {
  it('loads rows from the service', async () => {
    server = installFakeServer(LINKS);
    const store = makeStore();
    await store.load();
    expect(store.links).toHaveLength(LINKS.length);
    expect(store.loadError).toBeNull();
  });

  it('records a load error when the service is down', async () => {
    const original = globalThis.fetch;
    globalThis.fetch = async () => {
      throw new TypeError('connection refused');
    };
    try {
      const store = makeStore();
      await store.load();
      expect(store.loadError).toContain('service unreachable');
    } finally {
      globalThis.fetch = original;
    }
  });

  it('applies a decision optimistically before the server answers', async () => {
    server = installFakeServer(LINKS);
    const store = makeStore();
    await store.load();
    const linkId = LINKS[0].id;
    const pending = store.decide(linkId, 'validated');
    // visible immediately, before awaiting the request
    expect(store.getRow(linkId)!.decision).toBe('validated');
    await pending;
    expect(store.getRow(linkId)!.decision).toBe('validated');
    expect(server.rows.get(linkId)!.decision).toBe('validated');
  });

  it('reverts and surfaces a notice on conflict', async () => {
    server = installFakeServer(LINKS);
    const store = makeStore();
    await store.load();
    const linkId = LINKS[0].id;
    server.failNext = {
      status: 409,
      code: 'already-decided',
      message: 'link already decided (deleted)',
    };
    await store.decide(linkId, 'validated');
    expect(store.getRow(linkId)!.decision).toBe('pending');
    expect(store.notice).toMatchObject({ kind: 'conflict' });
    store.dismissNotice();
    expect(store.notice).toBeNull();
  });

  it('reverts and surfaces an error notice on server failure', async () => {
    server = installFakeServer(LINKS);
    const store = makeStore();
    await store.load();
    const linkId = LINKS[0].id;
    server.failNext = { status: 500, code: 'internal', message: 'boom' };
    await store.decide(linkId, 'validated');
    expect(store.getRow(linkId)!.decision).toBe('pending');
    expect(store.notice).toMatchObject({ kind: 'error', message: 'boom' });
  });

  it('serializes decisions per link: the second is a no-op', async () => {
    server = installFakeServer(LINKS);
    const store = makeStore();
    await store.load();
    const linkId = LINKS[0].id;
    await Promise.all([
      store.decide(linkId, 'validated'),
      store.decide(linkId, 'deleted'),
    ]);
    expect(store.getRow(linkId)!.decision).toBe('validated');
    expect(server.rows.get(linkId)!.decision).toBe('validated');
    const posts = server.requests.filter((r) => r.method === 'POST');
    expect(posts).toHaveLength(1);
  });

  it('ignores decisions on already-decided rows', async () => {
    server = installFakeServer(LINKS);
    const store = makeStore();
    await store.load();
    const linkId = LINKS[0].id;
    await store.decide(linkId, 'deleted');
    await store.decide(linkId, 'validated');
    expect(store.getRow(linkId)!.decision).toBe('deleted');
  });

  it('notifies subscribers on every state change', async () => {
    server = installFakeServer(LINKS);
    const store = makeStore();
    let calls = 0;
    const unsubscribe = store.subscribe(() => {
      calls += 1;
    });
    await store.load();
    await store.decide(LINKS[0].id, 'validated');
    expect(calls).toBeGreaterThanOrEqual(3); // load + optimistic + settle
    unsubscribe();
    const settled = calls;
    await store.decide(LINKS[1].id, 'validated');
    expect(calls).toBe(settled);
  });
});
