import { listSessions } from './api';
import { renderApp } from './render';
import { SessionStore } from './store';

const BASE_URL = '';

async function resolveSessionId(): Promise<string | null> {
  const fromQuery = new URLSearchParams(window.location.search).get('session');
  if (fromQuery) return fromQuery;
  const sessions = await listSessions(BASE_URL);
  return sessions.length > 0 ? sessions[0].id : null;
}

async function bootstrap(): Promise<void> {
  const container = document.getElementById('app');
  if (!container) throw new Error('missing #app container');
  let sessionId: string | null = null;
  try {
    sessionId = await resolveSessionId();
  } catch (error) {
    container.textContent = `Cannot reach the review service: ${String(error)}`;
    return;
  }
  if (sessionId === null) {
    container.textContent = 'No sessions yet. Create one via POST /sessions.';
    return;
  }
  const store = new SessionStore({
    baseUrl: BASE_URL,
    sessionId,
    actor: 'reviewer',
  });
  store.subscribe(() => renderApp(container, store, BASE_URL, sessionId!));
  await store.load();
}

void bootstrap();
