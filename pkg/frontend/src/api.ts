/**
 * Thin typed client for the review service. The UI computes no rule logic;
 * everything it displays comes from these responses.
 */

import type { Decision, ExportDocument, LinkRow, SessionSummary } from './types';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly detail: string = '',
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (error) {
    throw new ApiError(0, 'network', `service unreachable: ${String(error)}`);
  }
  if (!response.ok) {
    let code = 'http-error';
    let message = `${response.status} ${response.statusText}`;
    let detail = '';
    try {
      const body = (await response.json()) as {
        code?: string;
        message?: string;
        detail?: string;
      };
      code = body.code ?? code;
      message = body.message ?? message;
      detail = body.detail ?? '';
    } catch {
      // non-JSON error body; keep the status line
    }
    throw new ApiError(response.status, code, message, detail);
  }
  return (await response.json()) as T;
}

export async function listSessions(baseUrl: string): Promise<SessionSummary[]> {
  const body = await request<{ sessions: SessionSummary[] }>(`${baseUrl}/sessions`);
  return body.sessions;
}

export async function fetchLinks(
  baseUrl: string,
  sessionId: string,
): Promise<LinkRow[]> {
  const body = await request<{ links: LinkRow[] }>(
    `${baseUrl}/sessions/${sessionId}/links`,
  );
  return body.links;
}

export async function postDecision(
  baseUrl: string,
  sessionId: string,
  linkId: string,
  decision: Exclude<Decision, 'pending'>,
  actor: string,
): Promise<LinkRow> {
  return request<LinkRow>(
    `${baseUrl}/sessions/${sessionId}/links/${linkId}/decision`,
    {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ decision, actor }),
    },
  );
}

export async function fetchExport(
  baseUrl: string,
  sessionId: string,
): Promise<ExportDocument> {
  return request<ExportDocument>(`${baseUrl}/sessions/${sessionId}/export`);
}
