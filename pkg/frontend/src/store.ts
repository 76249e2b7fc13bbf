/**
 * Session state with optimistic decisions.
 *
 * decide() applies the new decision to the local row immediately, then posts
 * it. On success the row is replaced with the server's copy; on failure the
 * snapshot is restored and the error is surfaced as a notice. Requests are
 * serialized per link so a validate/delete race on one row cannot interleave.
 */

import { ApiError, fetchLinks, postDecision } from './api';
import type { Decision, LinkRow } from './types';

export type Notice = { kind: 'error' | 'conflict'; message: string } | null;

export interface StoreOptions {
  baseUrl: string;
  sessionId: string;
  actor: string;
}

type Listener = () => void;

export class SessionStore {
  private rows = new Map<string, LinkRow>();
  private order: string[] = [];
  private listeners = new Set<Listener>();
  notice: Notice = null;
  loadError: string | null = null;

  constructor(private readonly options: StoreOptions) {}

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  get links(): LinkRow[] {
    return this.order.map((id) => this.rows.get(id)!);
  }

  getRow(linkId: string): LinkRow | undefined {
    return this.rows.get(linkId);
  }

  async load(): Promise<void> {
    try {
      const links = await fetchLinks(this.options.baseUrl, this.options.sessionId);
      this.rows = new Map(links.map((row) => [row.id, row]));
      this.order = links.map((row) => row.id);
      this.loadError = null;
    } catch (error) {
      this.loadError = error instanceof Error ? error.message : String(error);
    }
    this.emit();
  }

  dismissNotice(): void {
    this.notice = null;
    this.emit();
  }

  /**
   * Validate or delete one pending link. The row flips optimistically
   * before this returns; the promise resolves once the server has answered
   * and the row reflects the final state. Because the optimistic flip
   * happens synchronously, a second decide on the same link while the first
   * is in flight sees a non-pending row and is a no-op — requests are
   * thereby serialized per link.
   */
  async decide(
    linkId: string,
    decision: Exclude<Decision, 'pending'>,
  ): Promise<void> {
    const row = this.rows.get(linkId);
    if (!row || row.decision !== 'pending') {
      return; // decided rows are immutable in the UI
    }
    const snapshot = row;
    this.rows.set(linkId, { ...row, decision });
    this.emit();
    try {
      const updated = await postDecision(
        this.options.baseUrl,
        this.options.sessionId,
        linkId,
        decision,
        this.options.actor,
      );
      this.rows.set(linkId, updated);
    } catch (error) {
      this.rows.set(linkId, snapshot);
      if (error instanceof ApiError && error.status === 409) {
        this.notice = {
          kind: 'conflict',
          message: `${snapshot.leftName} / ${snapshot.rightName}: already decided elsewhere`,
        };
      } else {
        this.notice = {
          kind: 'error',
          message: error instanceof Error ? error.message : String(error),
        };
      }
    }
    this.emit();
  }
}
