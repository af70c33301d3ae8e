// Thin fetch wrappers over the service API. The UI never derives model
// state itself; everything it shows comes back from these calls.

import type { BatchError, Command, LayoutDoc, ModelDoc } from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly detail: BatchError,
  ) {
    super(detail.message ? `${detail.error}: ${detail.message}` : detail.error);
  }
}

export interface LayoutQuery {
  width: number;
  height: number;
  focus?: string | null;
}

export class Api {
  constructor(readonly baseUrl: string = "") {}

  async getModel(): Promise<ModelDoc> {
    return this.getJson(`${this.baseUrl}/api/model`);
  }

  async getLayout(query: LayoutQuery): Promise<LayoutDoc> {
    const params = new URLSearchParams({
      width: String(query.width),
      height: String(query.height),
    });
    if (query.focus) params.set("focus", query.focus);
    return this.getJson(`${this.baseUrl}/api/layout?${params}`);
  }

  async postCommands(commands: Command[]): Promise<ModelDoc> {
    const resp = await fetch(`${this.baseUrl}/api/commands`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(commands),
    });
    if (!resp.ok) {
      throw new ServiceError(resp.status, await readError(resp));
    }
    return resp.json();
  }

  private async getJson(url: string): Promise<any> {
    const resp = await fetch(url);
    if (!resp.ok) {
      throw new ServiceError(resp.status, await readError(resp));
    }
    return resp.json();
  }
}

async function readError(resp: Response): Promise<BatchError> {
  try {
    return await resp.json();
  } catch {
    return { error: `HTTP ${resp.status}`, message: resp.statusText };
  }
}
